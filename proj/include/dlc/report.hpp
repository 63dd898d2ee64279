#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlc/curves.hpp"
#include "dlc/field.hpp"
#include "dlc/multipoly.hpp"
#include "nlohmann/json.hpp"

// Deterministic report plumbing shared by the command-line tool and the test
// suite: SHA-256 hashing, manifest verification for the bundled fixture data,
// JSON building blocks, and fixture loaders.

namespace dlc::report {

using ordered_json = nlohmann::ordered_json;

// Lowercase-hex SHA-256.
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_file_hex(const std::string& path);  // throws if unreadable

// One line of a sha256sum-style manifest: "<hex>  <relative path>".
struct ManifestEntry {
  std::string hash;
  std::string path;
};
std::vector<ManifestEntry> read_manifest(const std::string& manifest_path);

// Hash every file listed in dir/MANIFEST.sha256 against its recorded digest.
// Returns the relative paths that are missing or mismatched; empty = verified.
std::vector<std::string> verify_manifest(const std::string& dir);

// JSON building blocks.  Field descriptors carry {p, n, modulus} so reports
// pin the exact element encoding; polynomials use {coords, terms:[{coef,exp}]}.
ordered_json field_json(const gf::Field& f);
ordered_json curve_json(const curves::CurveDesc& c);
ordered_json poly_json(const poly::MultiPoly& p);
poly::MultiPoly poly_from_json(const nlohmann::json& j);

// Equation fixture files: {"coords": [...], "count": n, "equations": [...]},
// where each equation is {"terms": [{"coef": c, "exp": [...]}, ...]} over the
// shared coordinate list.
struct EquationFixture {
  std::vector<std::string> coords;
  std::vector<poly::MultiPoly> equations;
};
EquationFixture load_equations(const std::string& path);
std::string equations_text(const std::vector<poly::MultiPoly>& eqs);  // same layout

// Valuation fixture files: CSV with header "function,nu0,pole".
struct ValuationRow {
  std::string function;
  std::uint64_t nu0 = 0;
  std::uint64_t pole = 0;
};
std::vector<ValuationRow> load_valuations_csv(const std::string& path);

// Canonical serial form used for every generated report: 1-space indent,
// trailing newline.  write_text goes through a temp file + rename.
std::string json_text(const ordered_json& j);
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace dlc::report
