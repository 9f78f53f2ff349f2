#include "tbh/io.hpp"

#include "tbh/version.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tbh::io {

json field_to_json(const SpectralField1D& u) {
    std::vector<double> re, im;
    re.reserve(u.cutoff() + 1);
    im.reserve(u.cutoff() + 1);
    for (const cd& c : u.coeffs()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return json{{"lambda", u.cutoff()}, {"re", re}, {"im", im}};
}

SpectralField1D field_from_json(const json& j) {
    int lambda = j.at("lambda").get<int>();
    auto re = j.at("re").get<std::vector<double>>();
    auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != static_cast<size_t>(lambda + 1) || im.size() != re.size())
        throw std::invalid_argument("field json needs lambda+1 re/im entries");
    if (im[0] != 0.0) throw std::invalid_argument("field json needs im[0] = 0");
    std::vector<cd> c(lambda + 1);
    for (size_t i = 0; i < re.size(); ++i) c[i] = cd(re[i], im[i]);
    return SpectralField1D(lambda, std::move(c));
}

json diagnostics_to_json(const DiagnosticRecord& d) {
    json j{{"t", d.t},
           {"u0", d.u0},
           {"energy", d.energy},
           {"energy_total", d.energy_total},
           {"hamiltonian", d.hamiltonian}};
    if (d.f_integral) j["f_integral"] = *d.f_integral;
    if (d.fu_integral) j["fu_integral"] = *d.fu_integral;
    if (d.fu2_integral) j["fu2_integral"] = *d.fu2_integral;
    return j;
}

json field3d_to_json(const SpectralField3D& u) {
    json comps = json::array();
    for (const auto& comp : u.data()) {
        std::vector<double> re, im;
        re.reserve(comp.size());
        im.reserve(comp.size());
        for (const cd& c : comp) {
            re.push_back(c.real());
            im.push_back(c.imag());
        }
        comps.push_back(json{{"re", re}, {"im", im}});
    }
    return json{{"lambda3", u.cutoff()},
                {"side", u.side()},
                {"index_order", "kx,ky,kz (kz fastest), offset lambda3"},
                {"components", comps}};
}

mad::MadelungState madelung_from_json(const json& j) {
    mad::MadelungState st;
    st.n = j.at("grid_n").get<int>();
    st.rho = j.at("rho").get<std::vector<double>>();
    st.s = j.at("s").get<std::vector<double>>();
    st.winding = j.at("winding").get<double>();
    st.kappa = j.at("kappa").get<double>();
    if (st.n <= 0 || st.rho.size() != static_cast<size_t>(st.n) ||
        st.s.size() != static_cast<size_t>(st.n))
        throw std::invalid_argument("madelung state arrays must have grid_n entries");
    if (!(st.kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    return st;
}

json madelung_to_json(const mad::MadelungState& st) {
    return json{{"grid_n", st.n},
                {"rho", st.rho},
                {"s", st.s},
                {"winding", st.winding},
                {"kappa", st.kappa}};
}

void write_ndjson(std::ostream& os, const json& j) { os << j.dump() << '\n'; }

void write_csv_header(std::ostream& os, const std::vector<std::string>& cols) {
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
}

void write_csv_row(std::ostream& os, const std::vector<double>& vals) {
    os << std::setprecision(17);
    for (size_t i = 0; i < vals.size(); ++i) os << (i ? "," : "") << vals[i];
    os << '\n';
}

std::uint64_t fnv1a64(const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string s = ss.str();
    return fnv1a64(s.data(), s.size());
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void write_manifest(const RunManifest& m, const std::string& path) {
    json outs = json::array();
    for (const std::string& p : m.outputs) {
        std::ifstream f(p, std::ios::binary | std::ios::ate);
        json o{{"path", p}};
        if (f) {
            o["bytes"] = static_cast<long long>(f.tellg());
            std::ostringstream hex;
            hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64_file(p);
            o["fnv1a64"] = hex.str();
        }
        outs.push_back(o);
    }
    json j{{"version", m.version.empty() ? tbh::version : m.version},
           {"subcommand", m.subcommand},
           {"config", m.config_echo},
           {"seed", m.seed},
           {"started_at", m.started_at},
           {"finished_at", m.finished_at},
           {"outputs", outs}};
    std::ofstream f(path);
    f << j.dump(2) << '\n';
}

} // namespace tbh::io
