#pragma once

#include "tbh/burgers3d.hpp"
#include "tbh/field.hpp"
#include "tbh/invariants.hpp"
#include "tbh/madelung.hpp"

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace tbh::io {

using json = nlohmann::json;

json field_to_json(const SpectralField1D& u); // {lambda, re, im}, im[0] = 0
SpectralField1D field_from_json(const json& j);

json diagnostics_to_json(const DiagnosticRecord& d);

json field3d_to_json(const SpectralField3D& u); // shape metadata + flat re/im per component

mad::MadelungState madelung_from_json(const json& j); // {grid_n, rho, s, winding, kappa}
json madelung_to_json(const mad::MadelungState& st);

void write_ndjson(std::ostream& os, const json& j); // one compact object per line

void write_csv_header(std::ostream& os, const std::vector<std::string>& cols);
void write_csv_row(std::ostream& os, const std::vector<double>& vals);

std::uint64_t fnv1a64(const void* data, size_t len);
std::uint64_t fnv1a64_file(const std::string& path);

std::string iso8601_now();

struct RunManifest {
    std::string version;
    std::string subcommand;
    json config_echo;
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
};

// Manifest with per-output fnv1a64 checksums and sizes.
void write_manifest(const RunManifest& m, const std::string& path);

} // namespace tbh::io
