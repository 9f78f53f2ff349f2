#include "tbh/field.hpp"

#include "tbh/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tbh {

GridSpec GridSpec::dealiased(int lambda) {
    return GridSpec{fft::next_fast_size(3 * lambda + 1)};
}

std::vector<double> GridSpec::points() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = 2.0 * M_PI * j / n;
    return x;
}

SpectralField1D::SpectralField1D(int lambda) : lambda_(lambda), c_(lambda + 1, cd(0.0, 0.0)) {
    if (lambda < 1) throw std::invalid_argument("cutoff must be >= 1");
}

SpectralField1D::SpectralField1D(int lambda, std::vector<cd> coeffs)
    : lambda_(lambda), c_(std::move(coeffs)) {
    if (lambda < 1) throw std::invalid_argument("cutoff must be >= 1");
    if (c_.size() != static_cast<size_t>(lambda + 1))
        throw std::invalid_argument("coefficient count must be lambda+1");
    c_[0] = cd(c_[0].real(), 0.0);
}

cd SpectralField1D::coeff(int k) const {
    int a = std::abs(k);
    if (a > lambda_) return cd(0.0, 0.0);
    return k >= 0 ? c_[a] : std::conj(c_[a]);
}

void SpectralField1D::set_coeff(int k, cd v) {
    if (k < 0 || k > lambda_) throw std::out_of_range("mode index");
    c_[k] = (k == 0) ? cd(v.real(), 0.0) : v;
}

void SpectralField1D::fix_mean() { c_[0] = cd(c_[0].real(), 0.0); }

double SpectralField1D::evaluate(double x) const {
    cd z = std::polar(1.0, x);
    cd acc(0.0, 0.0);
    for (int k = lambda_; k >= 1; --k) acc = (acc + c_[k]) * z;
    return c_[0].real() + 2.0 * acc.real();
}

double SpectralField1D::derivative(double x) const {
    cd z = std::polar(1.0, x);
    cd acc(0.0, 0.0);
    for (int k = lambda_; k >= 1; --k) acc = (acc + cd(0.0, k) * c_[k]) * z;
    return 2.0 * acc.real();
}

double SpectralField1D::second_derivative(double x) const {
    cd z = std::polar(1.0, x);
    cd acc(0.0, 0.0);
    for (int k = lambda_; k >= 1; --k) acc = (acc - double(k) * double(k) * c_[k]) * z;
    return 2.0 * acc.real();
}

double SpectralField1D::max_modulus() const {
    double m = 0.0;
    for (const cd& v : c_) m = std::max(m, std::abs(v));
    return m;
}

double SpectralField1D::max_abs_value(int grid_n) const {
    int n = grid_n > 0 ? grid_n : std::max(64, 8 * lambda_);
    std::vector<double> u = collocate(*this, fft::next_fast_size(n));
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

SpectralField1D translate(const SpectralField1D& u, double d) {
    SpectralField1D out(u.cutoff());
    for (int k = 0; k <= u.cutoff(); ++k)
        out.set_coeff(k, u.coeffs()[k] * std::polar(1.0, -k * d));
    return out;
}

SpectralField1D galilean(const SpectralField1D& u, double v, double t) {
    SpectralField1D out(u.cutoff());
    out.set_coeff(0, u.coeffs()[0] - v);
    for (int k = 1; k <= u.cutoff(); ++k)
        out.set_coeff(k, u.coeffs()[k] * std::polar(1.0, k * v * t));
    return out;
}

std::vector<double> collocate(const SpectralField1D& u, int n) {
    if (n < 2 * u.cutoff() + 1) throw std::invalid_argument("grid too small for cutoff");
    std::vector<cd> buf(n, cd(0.0, 0.0));
    buf[0] = cd(u.mean(), 0.0);
    for (int k = 1; k <= u.cutoff(); ++k) {
        buf[k] = u.coeffs()[k];
        buf[n - k] = std::conj(u.coeffs()[k]);
    }
    fft::transform(buf, +1);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = buf[j].real();
    return out;
}

std::vector<double> collocate_derivative(const SpectralField1D& u, int n) {
    if (n < 2 * u.cutoff() + 1) throw std::invalid_argument("grid too small for cutoff");
    std::vector<cd> buf(n, cd(0.0, 0.0));
    for (int k = 1; k <= u.cutoff(); ++k) {
        cd v = cd(0.0, k) * u.coeffs()[k];
        buf[k] = v;
        buf[n - k] = std::conj(v);
    }
    fft::transform(buf, +1);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = buf[j].real();
    return out;
}

SpectralField1D project(const std::vector<double>& samples, int lambda) {
    int n = static_cast<int>(samples.size());
    if (n < 2 * lambda + 1) throw std::invalid_argument("grid too small for cutoff");
    std::vector<cd> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = cd(samples[j], 0.0);
    fft::transform(buf, -1);
    std::vector<cd> c(lambda + 1);
    for (int k = 0; k <= lambda; ++k) c[k] = buf[k] / double(n);
    return SpectralField1D(lambda, std::move(c));
}

double extremum_position(const SpectralField1D& u, int grid_mult) {
    int n = fft::next_fast_size(std::max(64, grid_mult * u.cutoff()));
    std::vector<double> g = collocate(u, n);
    double mean = u.mean();
    int best = 0;
    double bestval = -1.0;
    for (int j = 0; j < n; ++j) {
        double v = std::abs(g[j] - mean);
        if (v > bestval) {
            bestval = v;
            best = j;
        }
    }
    double h = 2.0 * M_PI / n;
    double x = best * h;
    for (int it = 0; it < 50; ++it) {
        double d1 = u.derivative(x);
        double d2 = u.second_derivative(x);
        if (d2 == 0.0) break;
        double step = -d1 / d2;
        step = std::clamp(step, -h, h);
        x += step;
        if (std::abs(step) < 1e-14) break;
    }
    x = std::fmod(x, 2.0 * M_PI);
    if (x < 0.0) x += 2.0 * M_PI;
    return x;
}

SpectralField1D bilinear_product(const SpectralField1D& a, const SpectralField1D& b) {
    if (a.cutoff() != b.cutoff()) throw std::invalid_argument("cutoff mismatch");
    int n = GridSpec::dealiased(a.cutoff()).n;
    std::vector<double> ga = collocate(a, n);
    std::vector<double> gb = collocate(b, n);
    for (int j = 0; j < n; ++j) ga[j] *= gb[j];
    return project(ga, a.cutoff());
}

SpectralField1D quadratic_product(const SpectralField1D& u) {
    int n = GridSpec::dealiased(u.cutoff()).n;
    std::vector<double> g = collocate(u, n);
    for (double& v : g) v *= v;
    return project(g, u.cutoff());
}

namespace ref {

SpectralField1D bilinear_product_direct(const SpectralField1D& a, const SpectralField1D& b) {
    if (a.cutoff() != b.cutoff()) throw std::invalid_argument("cutoff mismatch");
    int la = a.cutoff();
    SpectralField1D out(la);
    for (int k = 0; k <= la; ++k) {
        cd s(0.0, 0.0);
        for (int kp = std::max(-la, k - la); kp <= la; ++kp) s += a.coeff(k - kp) * b.coeff(kp);
        out.set_coeff(k, s);
    }
    return out;
}

SpectralField1D quadratic_product_direct(const SpectralField1D& u) {
    return bilinear_product_direct(u, u);
}

} // namespace ref

} // namespace tbh
