#include "dlc/semigroup.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlc/series.hpp"

namespace dlc::sgp {

// ---------------------------------------------------------------------------
// NumericSemigroup
// ---------------------------------------------------------------------------

NumericSemigroup NumericSemigroup::from_generators(const std::vector<std::uint64_t>& gens,
                                                   std::uint64_t bound) {
  NumericSemigroup s;
  s.member_.assign(bound + 1, 0);
  s.member_[0] = 1;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    for (std::uint64_t g : gens) {
      if (g == 0 || g > n) continue;
      if (s.member_[n - g]) {
        s.member_[n] = 1;
        break;
      }
    }
  }
  s.index_nongaps();
  return s;
}

NumericSemigroup NumericSemigroup::from_membership(std::vector<char> member) {
  NumericSemigroup s;
  s.member_ = std::move(member);
  if (s.member_.empty() || !s.member_[0]) {
    throw std::invalid_argument("membership table must contain 0");
  }
  s.index_nongaps();
  return s;
}

void NumericSemigroup::index_nongaps() {
  nongaps_.clear();
  for (std::uint64_t n = 0; n < member_.size(); ++n) {
    if (member_[n]) nongaps_.push_back(n);
  }
}

bool NumericSemigroup::contains(std::uint64_t n) const {
  if (n >= member_.size()) return true;  // everything past the table is in
  return member_[n] != 0;
}

std::vector<std::uint64_t> NumericSemigroup::gaps() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n < member_.size(); ++n) {
    if (!member_[n]) out.push_back(n);
  }
  return out;
}

std::size_t NumericSemigroup::gap_count() const { return member_.size() - nongaps_.size(); }

bool NumericSemigroup::symmetric(std::uint64_t genus) const {
  // Membership of a and 2g-1-a must be complementary across [0, 2g).
  const std::uint64_t top = 2 * genus;
  for (std::uint64_t a = 0; a < top; ++a) {
    if (contains(a) == contains(top - 1 - a)) return false;
  }
  return true;
}

std::vector<std::uint64_t> NumericSemigroup::minimal_generators() const {
  std::vector<std::uint64_t> gens;
  std::uint64_t minpos = 0;
  for (std::uint64_t n = 1; n < member_.size(); ++n) {
    if (member_[n]) {
      minpos = n;
      break;
    }
  }
  if (minpos == 0) return gens;  // only 0 is present within the table
  const std::uint64_t bound = member_.size() - 1;
  for (std::uint64_t n = 1;; ++n) {
    if (n > bound && n - minpos > bound) break;
    if (!contains(n)) continue;
    bool split = false;
    for (std::uint64_t a = minpos; a + minpos <= n; ++a) {
      if (contains(a) && contains(n - a)) {
        split = true;
        break;
      }
    }
    if (!split) gens.push_back(n);
  }
  return gens;
}

std::vector<std::size_t> NumericSemigroup::residue_counts(std::uint64_t modulus) const {
  std::vector<std::size_t> counts(modulus, 0);
  for (std::uint64_t n : nongaps_) ++counts[n % modulus];
  return counts;
}

// ---------------------------------------------------------------------------
// Reduction engine internals
// ---------------------------------------------------------------------------

namespace {

using series::Ser3;

Ser3 ser_one(std::size_t len) { return Ser3::monomial(len, 0, 1); }

constexpr std::size_t kNumVars = 13;  // x, y1, y2, w1..w10
// Working precision: 2*(2g-2) + 2*m_inf + 1 power-series coefficients, enough
// to certify every pivot valuation with a full dual window to spare.
constexpr std::size_t kPrecision = 16577;
// Any leading term at or past this index cannot be trusted; reaching one is a
// hard failure rather than a silent gap/nongap guess.
constexpr std::uint32_t kRigor = 9325;
constexpr std::uint64_t kPoleLimit = 7252;  // 2g - 2: largest pole order enumerated
constexpr std::uint32_t kDegMax = 9;        // 7 m_inf = 2g - 2 caps total degree at 9
constexpr std::uint32_t kTopVal = 9324;     // 9 * m_inf: valuation of the degree cap

// Pole orders at the infinite place, in coordinate order x, y1, y2, w1..w10.
constexpr std::uint64_t kPoles[kNumVars] = {729,  810,  891, 972,  999,  1026, 918,
                                            1002, 1035, 921, 1036, 1029, 1032};
// Complement partner of each coordinate: the product f * partner(f) has pole
// order exactly m_inf, so partner(f) vanishes to order m_inf - pole(f) at the
// distinguished place.  w8 itself has pole order m_inf, so its partner is 1.
constexpr int kPartnerIdx[kNumVars] = {8, 12, 11, 5, 4, 3, 7, 6, 0, 9, -1, 2, 1};
// Signs picked up by the degree-reversing involution on the self-paired
// coordinates w2 and w7; all other coordinates map with sign +1.
constexpr int kSignNeg[kNumVars] = {0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0};

constexpr char kCkptMagic[8] = {'D', 'L', 'C', 'R', 'E', 'E', '1', '\0'};

std::uint64_t pack_mu(const std::array<std::uint16_t, kNumVars>& e) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    m |= static_cast<std::uint64_t>(e[i] & 0xF) << (4 * i);
  }
  return m;
}

std::array<std::uint16_t, kNumVars> unpack_mu(std::uint64_t m) {
  std::array<std::uint16_t, kNumVars> e{};
  for (std::size_t i = 0; i < kNumVars; ++i) {
    e[i] = static_cast<std::uint16_t>((m >> (4 * i)) & 0xF);
  }
  return e;
}

// One stored pivot: a reduced monomial row together with the combination that
// produced it.  `mu` is the row's own monomial, `own` its coefficient, and
// `refs` lists (pivot valuation, coefficient) pairs of earlier pivots that
// were added during reduction.  Every referenced valuation is strictly
// smaller, so the dependency graph is acyclic and can be flattened bottom-up.
struct Pivot {
  Ser3 row;
  std::uint64_t mu = 0;
  std::uint8_t own = 1;
  std::vector<std::pair<std::uint32_t, std::uint8_t>> refs;
};

struct EngineFailure {
  std::string reason;
};

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return static_cast<bool>(is);
}

}  // namespace

struct ReductionEngine::Impl {
  curves::CurveDesc curve;
  ReductionOptions opt;

  // Series data at working precision.
  std::vector<Ser3> partner;  // partner series per coordinate (w8 -> 1)
  std::vector<Ser3> w8pow;    // powers of the series for the top coordinate w8
  bool series_ready = false;

  // Odometer state: `e` is the exponent vector of the next leaf to process.
  std::array<std::uint16_t, kNumVars> e{};
  std::uint64_t pole = 0;
  std::uint32_t deg = 0;
  bool exhausted = false;
  std::vector<Ser3> prods;  // prods[k] = product of partner(i)^e[i] for i < k

  std::uint64_t rows = 0;
  std::uint64_t reductions = 0;
  std::size_t npivots = 0;
  std::vector<std::unique_ptr<Pivot>> pivots;  // indexed by valuation

  std::map<std::uint32_t, std::vector<std::pair<std::uint64_t, std::uint8_t>>> flat_cache;

  Impl(const curves::CurveDesc& c, ReductionOptions o) : curve(c), opt(std::move(o)) {
    if (c.family != curves::Family::ree || c.m != 1) {
      throw std::invalid_argument(
          "full nongap reduction is only tabulated for the smallest member of the family "
          "(q0 = 3); larger parameters exceed the supported precision budget");
    }
    pivots.resize(kRigor);
  }

  void prepare_series() {
    if (series_ready) return;
    series::ReeSeries rs = series::ree_series(curve.m, kPrecision);
    partner.clear();
    partner.reserve(kNumVars);
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (kPartnerIdx[i] < 0) {
        partner.push_back(ser_one(kPrecision));
      } else {
        partner.push_back(rs.coord[static_cast<std::size_t>(kPartnerIdx[i])]);
      }
      const std::size_t want = 1036 - kPoles[i];
      if (partner.back().first_nonzero() != want) {
        throw std::runtime_error("partner series has wrong vanishing order");
      }
    }
    w8pow.clear();
    w8pow.push_back(ser_one(kPrecision));
    const Ser3& w8 = rs.coord[10];
    for (std::uint32_t k = 1; k <= kDegMax; ++k) {
      w8pow.push_back(w8pow.back().mul(w8));
    }
    series_ready = true;
  }

  void reset_state() {
    e.fill(0);
    pole = 0;
    deg = 0;
    exhausted = false;
    rows = 0;
    reductions = 0;
    npivots = 0;
    for (auto& p : pivots) p.reset();
    flat_cache.clear();
    rebuild_prods();
  }

  void rebuild_prods() {
    prods.assign(kNumVars + 1, ser_one(kPrecision));
    for (std::size_t k = 0; k < kNumVars; ++k) {
      prods[k + 1] = prods[k];
      for (std::uint16_t t = 0; t < e[k]; ++t) {
        prods[k + 1] = prods[k + 1].mul(partner[k]);
      }
    }
  }

  // Advance the exponent odometer to the next admissible leaf: bump the last
  // position whose pole budget allows it, clearing everything after it.
  void advance() {
    std::size_t pos = kNumVars;
    while (pos > 0) {
      --pos;
      if (deg < kDegMax && pole + kPoles[pos] <= kPoleLimit) {
        ++e[pos];
        pole += kPoles[pos];
        ++deg;
        prods[pos + 1] = prods[pos + 1].mul(partner[pos]);
        for (std::size_t k = pos + 2; k <= kNumVars; ++k) prods[k] = prods[pos + 1];
        return;
      }
      // Carry: clear this position and try the one before it.
      pole -= kPoles[pos] * e[pos];
      deg -= e[pos];
      e[pos] = 0;
    }
    exhausted = true;
  }

  void process_leaf() {
    Ser3 row = prods[kNumVars].mul(w8pow[kDegMax - deg]);
    const std::size_t lead = row.first_nonzero();
    if (lead != kTopVal - pole) {
      throw EngineFailure{"leaf row has unexpected vanishing order " + std::to_string(lead) +
                          " (wanted " + std::to_string(kTopVal - pole) + ")"};
    }
    const std::uint64_t mu = pack_mu(e);
    std::uint8_t own = 1;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> refs;
    std::size_t cur = lead;
    while (true) {
      const std::size_t lv = row.first_nonzero(cur);
      if (lv == kern::npos) return;  // cancelled to zero within the window
      if (lv >= kRigor) {
        throw EngineFailure{
            "reduction pushed a leading term to valuation " + std::to_string(lv) +
            ", beyond the certified window; a longer expansion would be required"};
      }
      Pivot* hit = pivots[lv].get();
      if (hit == nullptr) {
        if (row.get(lv) == 2) {
          // Store pivots monic: scale the whole combination by 2 = -1.
          row.scale_in_place(2);
          own = static_cast<std::uint8_t>((own * 2) % 3);
          for (auto& r : refs) r.second = static_cast<std::uint8_t>((r.second * 2) % 3);
        }
        auto piv = std::make_unique<Pivot>();
        piv->row = std::move(row);
        piv->mu = mu;
        piv->own = own;
        piv->refs = std::move(refs);
        pivots[lv] = std::move(piv);
        ++npivots;
        return;
      }
      const unsigned c = row.get(lv);
      const std::uint8_t k = static_cast<std::uint8_t>(3 - c);  // c + k*1 = 0 mod 3
      row.axpy(hit->row, k);
      refs.emplace_back(static_cast<std::uint32_t>(lv), k);
      ++reductions;
      cur = lv + 1;
    }
  }

  // --- checkpointing ------------------------------------------------------

  void save_checkpoint() const {
    if (opt.checkpoint_path.empty()) return;
    const std::string tmp = opt.checkpoint_path + ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw std::runtime_error("cannot write checkpoint file " + tmp);
      os.write(kCkptMagic, sizeof(kCkptMagic));
      put(os, static_cast<std::uint32_t>(curve.q0));
      put(os, static_cast<std::uint64_t>(kPrecision));
      put(os, static_cast<std::uint64_t>(kRigor));
      put(os, kPoleLimit);
      put(os, kDegMax);
      put(os, rows);
      put(os, reductions);
      put(os, static_cast<std::uint8_t>(exhausted ? 1 : 0));
      for (std::uint16_t x : e) put(os, x);
      put(os, pole);
      put(os, deg);
      put(os, static_cast<std::uint64_t>(npivots));
      for (std::size_t v = 0; v < kRigor; ++v) {
        const Pivot* p = pivots[v].get();
        if (p == nullptr) continue;
        put(os, static_cast<std::uint32_t>(v));
        put(os, p->mu);
        put(os, p->own);
        put(os, static_cast<std::uint32_t>(p->refs.size()));
        for (const auto& [rv, rc] : p->refs) {
          put(os, rv);
          put(os, rc);
        }
        const std::size_t nw = p->row.words();
        put(os, static_cast<std::uint64_t>(nw));
        os.write(reinterpret_cast<const char*>(p->row.lo()),
                 static_cast<std::streamsize>(nw * sizeof(std::uint64_t)));
        os.write(reinterpret_cast<const char*>(p->row.hi()),
                 static_cast<std::streamsize>(nw * sizeof(std::uint64_t)));
      }
      if (!os) throw std::runtime_error("short write while saving checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, opt.checkpoint_path);
  }

  bool load_checkpoint() {
    if (opt.checkpoint_path.empty()) return false;
    std::ifstream is(opt.checkpoint_path, std::ios::binary);
    if (!is) return false;
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kCkptMagic, sizeof(magic)) != 0) {
      throw std::runtime_error("checkpoint file has wrong format: " + opt.checkpoint_path);
    }
    std::uint32_t q0 = 0, dmax = 0;
    std::uint64_t prec = 0, rigor = 0, plim = 0;
    if (!get(is, q0) || !get(is, prec) || !get(is, rigor) || !get(is, plim) || !get(is, dmax) ||
        q0 != static_cast<std::uint32_t>(curve.q0) || prec != kPrecision || rigor != kRigor ||
        plim != kPoleLimit || dmax != kDegMax) {
      throw std::runtime_error("checkpoint parameters do not match this run: " +
                               opt.checkpoint_path);
    }
    std::uint8_t done = 0;
    if (!get(is, rows) || !get(is, reductions) || !get(is, done)) {
      throw std::runtime_error("truncated checkpoint header: " + opt.checkpoint_path);
    }
    exhausted = done != 0;
    for (auto& x : e) {
      if (!get(is, x)) throw std::runtime_error("truncated checkpoint state");
    }
    if (!get(is, pole) || !get(is, deg)) throw std::runtime_error("truncated checkpoint state");
    std::uint64_t count = 0;
    if (!get(is, count)) throw std::runtime_error("truncated checkpoint state");
    for (auto& p : pivots) p.reset();
    npivots = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint32_t val = 0, nrefs = 0;
      std::uint64_t mu = 0, nw = 0;
      std::uint8_t own = 0;
      if (!get(is, val) || !get(is, mu) || !get(is, own) || !get(is, nrefs)) {
        throw std::runtime_error("truncated checkpoint pivot header");
      }
      auto piv = std::make_unique<Pivot>();
      piv->mu = mu;
      piv->own = own;
      piv->refs.resize(nrefs);
      for (auto& [rv, rc] : piv->refs) {
        if (!get(is, rv) || !get(is, rc)) throw std::runtime_error("truncated checkpoint refs");
      }
      if (!get(is, nw)) throw std::runtime_error("truncated checkpoint row");
      Ser3 row(kPrecision);
      if (nw != row.words()) throw std::runtime_error("checkpoint row width mismatch");
      std::vector<std::uint64_t> lo(nw), hi(nw);
      is.read(reinterpret_cast<char*>(lo.data()), static_cast<std::streamsize>(nw * 8));
      is.read(reinterpret_cast<char*>(hi.data()), static_cast<std::streamsize>(nw * 8));
      if (!is) throw std::runtime_error("truncated checkpoint row data");
      row.load_words(lo.data(), hi.data());
      piv->row = std::move(row);
      if (val >= kRigor || pivots[val]) throw std::runtime_error("corrupt checkpoint pivot table");
      pivots[val] = std::move(piv);
      ++npivots;
    }
    rebuild_prods();
    return true;
  }

  // --- main loop ----------------------------------------------------------

  void run_loop(WeierstrassResult& res) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    std::uint64_t since_check = 0;
    while (!exhausted) {
      process_leaf();
      ++rows;
      advance();
      if (opt.verbose && rows % 5000 == 0) {
        std::fprintf(stderr, "  [semigroup] %llu rows, %zu pivots, %llu reductions\n",
                     static_cast<unsigned long long>(rows), npivots,
                     static_cast<unsigned long long>(reductions));
      }
      if (opt.budget_seconds > 0 && ++since_check >= 64) {
        since_check = 0;
        const double sec = std::chrono::duration<double>(clock::now() - start).count();
        if (sec >= opt.budget_seconds) {
          save_checkpoint();
          res.completed = false;
          res.rows = rows;
          res.reductions = reductions;
          res.pivots = npivots;
          return;
        }
      }
    }
    res.completed = true;
    res.rows = rows;
    res.reductions = reductions;
    res.pivots = npivots;
    if (!opt.checkpoint_path.empty()) save_checkpoint();
  }

  // Product notation for a packed monomial, e.g. "x^2*w8^3"; "1" when empty.
  static std::string spell_mu(std::uint64_t mu) {
    static const char* const kNames[kNumVars] = {"x",  "y1", "y2", "w1", "w2", "w3", "w4",
                                                 "w5", "w6", "w7", "w8", "w9", "w10"};
    const auto exps = unpack_mu(mu);
    std::string out;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (!exps[i]) continue;
      if (!out.empty()) out += '*';
      out += kNames[i];
      if (exps[i] > 1) {
        out += '^';
        out += std::to_string(exps[i]);
      }
    }
    return out.empty() ? "1" : out;
  }

  void finish(WeierstrassResult& res) {
    // Translate pivot valuations v into nongaps n = kTopVal - v.
    std::vector<char> member(kPoleLimit + 2, 0);
    member[0] = 1;
    for (std::size_t v = 0; v < kRigor; ++v) {
      if (!pivots[v]) continue;
      const std::uint64_t n = kTopVal - v;  // n = 0 is the empty monomial's row
      if (n >= member.size()) {
        res.failure = true;
        res.failure_reason =
            "pivot valuation " + std::to_string(v) + " falls outside the pole-order window";
        return;
      }
      member[n] = 1;
    }
    NumericSemigroup full = NumericSemigroup::from_membership(std::move(member));
    res.nongaps.assign(full.nongaps().begin(), full.nongaps().end());
    res.witness_ids.clear();
    res.witness_ids.reserve(res.nongaps.size());
    for (std::uint32_t n : res.nongaps)
      res.witness_ids.push_back(spell_mu(pivots[kTopVal - n]->mu));
    if (npivots != static_cast<std::size_t>(curve.genus)) {
      res.failure = true;
      res.failure_reason = "found " + std::to_string(npivots) +
                           " nongaps below the conductor, expected " + std::to_string(curve.genus);
      return;
    }
    res.symmetric = full.symmetric(static_cast<std::uint64_t>(curve.genus));
    res.residue_counts = full.residue_counts(curve.q - 1);
    const std::vector<std::uint64_t> poles(std::begin(kPoles), std::end(kPoles));
    NumericSemigroup seed = NumericSemigroup::from_generators(poles, kPoleLimit + 1);
    res.seed_nongap_count = seed.nongaps().size();
    res.seed_contained = true;
    for (std::uint64_t n : seed.nongaps()) {
      if (!full.contains(n)) {
        res.seed_contained = false;
        break;
      }
    }
    const auto gens = full.minimal_generators();
    res.generators.assign(gens.begin(), gens.end());
  }

  // --- witnesses ----------------------------------------------------------

  // Flatten the combination DAG below valuation v into a single monomial ->
  // coefficient list (coefficients in GF(3)); dependencies always point to
  // strictly smaller valuations, so one ascending pass suffices.
  const std::vector<std::pair<std::uint64_t, std::uint8_t>>& flatten(std::uint32_t v) {
    auto it = flat_cache.find(v);
    if (it != flat_cache.end()) return it->second;
    std::vector<std::uint32_t> need;
    std::vector<std::uint32_t> stack{v};
    std::vector<char> seen(kRigor, 0);
    while (!stack.empty()) {
      const std::uint32_t s = stack.back();
      stack.pop_back();
      if (seen[s]) continue;
      seen[s] = 1;
      need.push_back(s);
      for (const auto& [rv, rc] : pivots[s]->refs) {
        if (!seen[rv] && !flat_cache.count(rv)) stack.push_back(rv);
      }
    }
    std::sort(need.begin(), need.end());
    for (std::uint32_t s : need) {
      if (flat_cache.count(s)) continue;
      std::map<std::uint64_t, std::uint32_t> acc;
      const Pivot* p = pivots[s].get();
      acc[p->mu] = p->own;
      for (const auto& [rv, rc] : p->refs) {
        for (const auto& [mu, c] : flat_cache.at(rv)) {
          acc[mu] = (acc[mu] + static_cast<std::uint32_t>(c) * rc) % 3;
        }
      }
      std::vector<std::pair<std::uint64_t, std::uint8_t>> flat;
      for (const auto& [mu, c] : acc) {
        if (c % 3 != 0) flat.emplace_back(mu, static_cast<std::uint8_t>(c % 3));
      }
      flat_cache.emplace(s, std::move(flat));
    }
    return flat_cache.at(v);
  }

  poly::MultiPoly witness_poly(std::uint64_t nongap) {
    if (nongap == 0 || nongap > kPoleLimit + 1) {
      throw std::out_of_range("witness requested outside the reduced window");
    }
    const std::uint32_t v = static_cast<std::uint32_t>(kTopVal - nongap);
    if (v >= kRigor || !pivots[v]) {
      throw std::invalid_argument("no pivot stored for nongap " + std::to_string(nongap));
    }
    const auto& flat = flatten(v);
    poly::MultiPoly out(curve.coords);
    for (const auto& [mu, c] : flat) {
      const auto exps = unpack_mu(mu);
      std::vector<std::uint16_t> exp(curve.coords.size(), 0);
      int sign = 1;
      for (std::size_t i = 0; i < kNumVars; ++i) {
        exp[i + 1] = exps[i];  // slot 0 is the affine coordinate t, never used
        if (kSignNeg[i] && (exps[i] % 2) != 0) sign = -sign;
      }
      const std::int64_t coef = (c == 2) ? -1 : 1;
      out.add_term(std::move(exp), coef * sign);
    }
    out.normalize();
    return out;
  }

  // Re-verify sampled pivot combinations at doubled precision: rebuild the
  // partner series with twice the coefficient window, replay each sampled
  // combination bottom-up through its dependency closure, and require the
  // same leading valuation plus an identical truncation to the stored row.
  // Replaying the recorded combination (rather than its expanded monomial
  // support) keeps the cost linear in the size of the dependency graph.
  void verify_witnesses(WeierstrassResult& res) {
    res.witnesses_checked = 0;
    res.witnesses_ok = true;
    if (opt.witness_samples == 0) return;
    std::vector<std::uint32_t> vals;
    for (std::uint32_t v = 0; v < kRigor; ++v) {
      if (pivots[v]) vals.push_back(v);
    }
    std::mt19937_64 rng(opt.witness_seed);
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (vals.size() - i));
      std::swap(vals[i], vals[j]);
    }
    const std::size_t take = std::min<std::size_t>(opt.witness_samples, vals.size());
    vals.resize(take);

    const std::size_t prec2 = 2 * kPrecision;
    series::ReeSeries rs2 = series::ree_series(curve.m, prec2);
    std::vector<Ser3> partner2;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      partner2.push_back(kPartnerIdx[i] < 0
                             ? ser_one(prec2)
                             : rs2.coord[static_cast<std::size_t>(kPartnerIdx[i])]);
    }
    std::vector<Ser3> w8pow2;
    w8pow2.push_back(ser_one(prec2));
    for (std::uint32_t k = 1; k <= kDegMax; ++k) {
      w8pow2.push_back(w8pow2.back().mul(rs2.coord[10]));
    }

    // Dependency closure of the sampled valuations, deepest first.
    std::vector<std::uint32_t> need;
    {
      std::vector<char> seen(kRigor, 0);
      std::vector<std::uint32_t> stack(vals.begin(), vals.end());
      while (!stack.empty()) {
        const std::uint32_t s = stack.back();
        stack.pop_back();
        if (seen[s]) continue;
        seen[s] = 1;
        need.push_back(s);
        for (const auto& [rv, rc] : pivots[s]->refs) {
          if (!seen[rv]) stack.push_back(rv);
        }
      }
      std::sort(need.begin(), need.end());
    }

    std::map<std::uint32_t, Ser3> memo;
    for (std::uint32_t v : need) {
      const Pivot* p = pivots[v].get();
      const auto exps = unpack_mu(p->mu);
      Ser3 leaf = ser_one(prec2);
      std::uint32_t d = 0;
      for (std::size_t i = 0; i < kNumVars; ++i) {
        d += exps[i];
        for (std::uint16_t t = 0; t < exps[i]; ++t) leaf = leaf.mul(partner2[i]);
      }
      leaf = leaf.mul(w8pow2[kDegMax - d]);
      Ser3 acc(prec2);
      acc.axpy(leaf, p->own);
      for (const auto& [rv, rc] : p->refs) acc.axpy(memo.at(rv), rc);
      bool ok = acc.first_nonzero() == v && acc.truncated(kPrecision) == p->row;
      if (!ok) {
        res.witnesses_ok = false;
        res.failure = true;
        res.failure_reason = "combination for valuation " + std::to_string(v) +
                             " does not survive doubled precision";
        return;
      }
      memo.emplace(v, std::move(acc));
    }
    res.witnesses_checked = take;
  }
};

// ---------------------------------------------------------------------------
// ReductionEngine public surface
// ---------------------------------------------------------------------------

ReductionEngine::ReductionEngine(const curves::CurveDesc& c, ReductionOptions opt)
    : impl_(new Impl(c, std::move(opt))) {}

ReductionEngine::~ReductionEngine() { delete impl_; }

WeierstrassResult ReductionEngine::run() {
  WeierstrassResult res;
  impl_->prepare_series();
  bool resumed = false;
  if (impl_->opt.resume) {
    resumed = impl_->load_checkpoint();
  }
  if (!resumed) impl_->reset_state();
  try {
    impl_->run_loop(res);
  } catch (const EngineFailure& f) {
    res.completed = false;
    res.failure = true;
    res.failure_reason = f.reason;
    res.rows = impl_->rows;
    res.reductions = impl_->reductions;
    res.pivots = impl_->npivots;
    return res;
  }
  if (!res.completed) return res;  // budget exhausted; checkpoint written
  impl_->finish(res);
  if (res.failure) return res;
  impl_->verify_witnesses(res);
  return res;
}

poly::MultiPoly ReductionEngine::witness(std::uint32_t nongap) const {
  return impl_->witness_poly(nongap);
}

}  // namespace dlc::sgp
