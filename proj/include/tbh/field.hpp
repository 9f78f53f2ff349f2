#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tbh {

using cd = std::complex<double>;

// Collocation grid for spectral products.  Quadratic products need
// n >= 3*lambda+1 so that no aliased image of modes up to 2*lambda lands
// back inside |k| <= lambda.
struct GridSpec {
    int n = 0;
    static GridSpec dealiased(int lambda);
    std::vector<double> points() const; // x_j = 2 pi j / n
};

// Real 2pi-periodic velocity field, stored as the half spectrum
// u_k for k = 0..lambda with u_{-k} = conj(u_k) implied and Im(u_0) = 0.
class SpectralField1D {
  public:
    explicit SpectralField1D(int lambda);
    SpectralField1D(int lambda, std::vector<cd> coeffs);

    int cutoff() const { return lambda_; }
    const std::vector<cd>& coeffs() const { return c_; }
    std::vector<cd>& coeffs() { return c_; }

    // Coefficient for any |k| <= lambda (negative k through conjugation),
    // zero outside the cutoff.
    cd coeff(int k) const;
    void set_coeff(int k, cd v); // k in [0, lambda]

    double mean() const { return c_[0].real(); }
    void fix_mean(); // drop rounding-level Im(u_0)

    double evaluate(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    double max_modulus() const;
    double max_abs_value(int grid_n = 0) const; // max |u(x)| on a dense grid

    bool operator==(const SpectralField1D& o) const = default;

  private:
    int lambda_;
    std::vector<cd> c_;
};

// u_k <- u_k e^{-ikd}; evaluate(out, x) = evaluate(in, x - d).
SpectralField1D translate(const SpectralField1D& u, double d);

// u_0 <- u_0 - v, u_k <- u_k e^{ikvt} for k != 0.
SpectralField1D galilean(const SpectralField1D& u, double v, double t);

// Exact Galerkin products P_L(ab) via zero-padded transforms.
SpectralField1D quadratic_product(const SpectralField1D& u);
SpectralField1D bilinear_product(const SpectralField1D& a, const SpectralField1D& b);

// Physical-space samples on an n-point grid (synthesis) and the Fourier
// projection of samples back to a cutoff (analysis).
std::vector<double> collocate(const SpectralField1D& u, int n);
std::vector<double> collocate_derivative(const SpectralField1D& u, int n);
SpectralField1D project(const std::vector<double>& samples, int lambda);

// Location in [0, 2 pi) of the largest |u(x) - mean| on a grid_mult*lambda
// grid, refined by Newton on u'(x) = 0.  Ties break toward smaller x.
double extremum_position(const SpectralField1D& u, int grid_mult = 16);

namespace ref {
// Direct O(lambda^2) convolution, the serial reference the transform path
// is checked against.
SpectralField1D quadratic_product_direct(const SpectralField1D& u);
SpectralField1D bilinear_product_direct(const SpectralField1D& a, const SpectralField1D& b);
} // namespace ref

} // namespace tbh
