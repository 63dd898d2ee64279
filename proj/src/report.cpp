#include "dlc/report.hpp"

#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dlc::report {

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4), straightforward single-shot implementation.
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::uint32_t, 64> kK = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, unsigned n) { return (x >> n) | (x << (32 - n)); }

struct Sha256 {
  std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::array<std::uint8_t, 64> buf{};
  std::size_t buf_len = 0;
  std::uint64_t total = 0;

  void block(const std::uint8_t* p) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    }
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto [a, b, c, d, e, f, g, hh] = h;
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = hh + s1 + ch + kK[i] + w[i];
      const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(const void* data, std::size_t len) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    total += len;
    while (len > 0) {
      const std::size_t take = std::min(len, buf.size() - buf_len);
      std::memcpy(buf.data() + buf_len, p, take);
      buf_len += take;
      p += take;
      len -= take;
      if (buf_len == buf.size()) {
        block(buf.data());
        buf_len = 0;
      }
    }
  }

  std::string hex_digest() {
    const std::uint64_t bits = total * 8;
    const std::uint8_t pad = 0x80;
    update(&pad, 1);
    const std::uint8_t zero = 0;
    while (buf_len != 56) update(&zero, 1);
    std::uint8_t lenb[8];
    for (int i = 0; i < 8; ++i) lenb[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
    total -= 9;  // padding does not count, though nothing reads total again
    update(lenb, 8);
    static const char* kHex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint32_t x : h) {
      for (int s = 28; s >= 0; s -= 4) out.push_back(kHex[(x >> s) & 0xF]);
    }
    return out;
  }
};

}  // namespace

std::string sha256_hex(const void* data, std::size_t len) {
  Sha256 s;
  s.update(data, len);
  return s.hex_digest();
}

std::string sha256_hex(const std::string& str) { return sha256_hex(str.data(), str.size()); }

std::string sha256_file_hex(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open file for hashing: " + path);
  Sha256 s;
  char chunk[1 << 16];
  while (is) {
    is.read(chunk, sizeof(chunk));
    s.update(chunk, static_cast<std::size_t>(is.gcount()));
  }
  return s.hex_digest();
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

std::vector<ManifestEntry> read_manifest(const std::string& manifest_path) {
  std::ifstream is(manifest_path);
  if (!is) throw std::runtime_error("cannot open manifest: " + manifest_path);
  std::vector<ManifestEntry> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos || sp != 64) {
      throw std::runtime_error("malformed manifest line: " + line);
    }
    std::size_t start = sp;
    while (start < line.size() && (line[start] == ' ' || line[start] == '*')) ++start;
    out.push_back({line.substr(0, sp), line.substr(start)});
  }
  return out;
}

std::vector<std::string> verify_manifest(const std::string& dir) {
  const auto entries = read_manifest(dir + "/MANIFEST.sha256");
  std::vector<std::string> bad;
  for (const auto& e : entries) {
    const std::string full = dir + "/" + e.path;
    try {
      if (sha256_file_hex(full) != e.hash) bad.push_back(e.path);
    } catch (const std::exception&) {
      bad.push_back(e.path);
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// JSON building blocks
// ---------------------------------------------------------------------------

ordered_json field_json(const gf::Field& f) {
  ordered_json j;
  j["p"] = f.desc().p;
  j["n"] = f.desc().n;
  j["modulus"] = f.desc().modulus;
  return j;
}

ordered_json curve_json(const curves::CurveDesc& c) {
  ordered_json j;
  j["family"] = curves::family_name(c.family);
  j["p"] = c.p;
  j["m"] = c.m;
  j["q0"] = c.q0;
  j["q"] = c.q;
  j["genus"] = c.genus;
  j["base_degree"] = c.base_degree;
  j["coords"] = c.coords;
  j["pole_orders"] = c.pole_orders;
  return j;
}

ordered_json poly_json(const poly::MultiPoly& p) {
  return ordered_json::parse(p.to_json());
}

poly::MultiPoly poly_from_json(const nlohmann::json& j) {
  return poly::MultiPoly::from_json(j.dump());
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

EquationFixture load_equations(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open equation fixture: " + path);
  nlohmann::json j;
  is >> j;
  EquationFixture fx;
  fx.coords = j.at("coords").get<std::vector<std::string>>();
  for (const auto& je : j.at("equations")) {
    poly::MultiPoly p(fx.coords);
    for (const auto& jt : je.at("terms")) {
      p.add_term(jt.at("exp").get<std::vector<std::uint16_t>>(), jt.at("coef").get<std::int64_t>());
    }
    p.normalize();
    fx.equations.push_back(std::move(p));
  }
  if (j.contains("count") && j["count"].get<std::size_t>() != fx.equations.size()) {
    throw std::runtime_error("equation fixture count disagrees with its own list: " + path);
  }
  return fx;
}

std::string equations_text(const std::vector<poly::MultiPoly>& eqs) {
  // Alphabetically ordered keys, 1-space indent: the exact layout of the
  // bundled fixtures, so regenerated files diff cleanly against them.
  nlohmann::json j;
  j["coords"] = eqs.empty() ? std::vector<std::string>{} : eqs.front().coords();
  j["count"] = eqs.size();
  j["equations"] = nlohmann::json::array();
  for (const auto& e : eqs) {
    nlohmann::json je;
    je["terms"] = nlohmann::json::array();
    for (const auto& t : e.terms()) {
      nlohmann::json jt;
      jt["coef"] = t.coef;
      jt["exp"] = t.exp;
      je["terms"].push_back(std::move(jt));
    }
    j["equations"].push_back(std::move(je));
  }
  return j.dump(1) + "\n";
}

std::vector<ValuationRow> load_valuations_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open valuation fixture: " + path);
  std::vector<ValuationRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != "function,nu0,pole") {
    throw std::runtime_error("valuation fixture missing expected header: " + path);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ValuationRow r;
    std::string nu0s, poles;
    if (!std::getline(ls, r.function, ',') || !std::getline(ls, nu0s, ',') ||
        !std::getline(ls, poles)) {
      throw std::runtime_error("malformed valuation row: " + line);
    }
    r.nu0 = std::stoull(nu0s);
    r.pole = std::stoull(poles);
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

std::string json_text(const ordered_json& j) { return j.dump(1) + "\n"; }

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("short write on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace dlc::report
