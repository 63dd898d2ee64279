#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dlc/curves.hpp"
#include "dlc/multipoly.hpp"

namespace dlc::sgp {

// Numerical semigroup restricted to [0, bound], stored as a membership table.
class NumericSemigroup {
 public:
  // Additive closure of the generators intersected with [0, bound], by
  // dynamic programming.  Zero generators are ignored.
  static NumericSemigroup from_generators(const std::vector<std::uint64_t>& gens,
                                          std::uint64_t bound);
  static NumericSemigroup from_membership(std::vector<char> member);

  std::uint64_t bound() const { return member_.size() - 1; }
  bool contains(std::uint64_t n) const;  // everything past the bound counts in
  const std::vector<std::uint64_t>& nongaps() const { return nongaps_; }
  std::vector<std::uint64_t> gaps() const;
  std::size_t gap_count() const;

  // a in S  <=>  2g-1-a not in S, for all 0 <= a < 2g.
  bool symmetric(std::uint64_t genus) const;

  // Nongaps not expressible as a sum of two smaller positive nongaps; the
  // bound must cover every gap (integers past it are treated as nongaps).
  std::vector<std::uint64_t> minimal_generators() const;

  // Nongap counts per residue class.
  std::vector<std::size_t> residue_counts(std::uint64_t modulus) const;

 private:
  void index_nongaps();

  std::vector<char> member_;  // index 0..bound
  std::vector<std::uint64_t> nongaps_;
};

// ---------------------------------------------------------------------------
// Full Weierstrass nongap computation at the infinite place of the Ree curve
// with q = 27, by exact series reduction at the paired rational place.
//
// Row space: monomials mu in the 13 nonconstant coordinates with naive pole
// sum <= 2g-2 = 7252 (degree <= 9).  Each row is the expansion of
// mu~ = prod partner(x_i)^(e_i) * w8^(9 - deg mu), whose valuation is
// 9*1036 - pole(mu); eliminating rows pivot-by-valuation over GF(3) leaves
// one pivot per achievable valuation, i.e. per nongap n = 9324 - v.  A
// combination whose valuation exceeds 9324 must be the zero function (its
// pole degree is at most 9324), which the engine asserts through the full
// stored precision.  Witness polynomials come from the recorded combinations:
// applying the involution turns a pivot combination into a polynomial in the
// original coordinates with pole order exactly n at the infinite place.

struct ReductionOptions {
  double budget_seconds = 0;      // 0 = unlimited
  std::string checkpoint_path;    // empty = never checkpoint
  bool resume = false;            // load checkpoint_path before starting
  std::size_t witness_samples = 100;
  std::uint64_t witness_seed = 461;
  bool verbose = false;           // progress lines on stderr
};

struct WeierstrassResult {
  bool completed = false;  // false: budget exhausted, checkpoint written
  bool failure = false;    // completed but the counts are wrong
  std::string failure_reason;

  std::size_t rows = 0;
  std::size_t reductions = 0;
  std::size_t pivots = 0;

  std::vector<std::uint32_t> nongaps;  // sorted, within [0, 2g-1]
  // Aligned with `nongaps`: leading monomial of the reduced function whose
  // pole order realizes the nongap (e.g. "x^2*w8^3"; "1" for nongap 0).
  std::vector<std::string> witness_ids;
  bool symmetric = false;
  std::vector<std::size_t> residue_counts;  // modulus q-1
  std::size_t seed_nongap_count = 0;
  bool seed_contained = false;
  std::vector<std::uint32_t> generators;

  std::size_t witnesses_checked = 0;
  bool witnesses_ok = false;
};

class ReductionEngine {
 public:
  // Only m = 1 is supported; larger parameters are formula-level only
  // (series lengths grow past practical scale) and are refused.
  explicit ReductionEngine(const curves::CurveDesc& c, ReductionOptions opt);
  ~ReductionEngine();
  ReductionEngine(const ReductionEngine&) = delete;
  ReductionEngine& operator=(const ReductionEngine&) = delete;

  WeierstrassResult run();

  // Expanded witness polynomial for a nongap below 2g (affine, in the curve
  // coordinate order with t unused).  Valid after a completed run.
  poly::MultiPoly witness(std::uint32_t nongap) const;

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace dlc::sgp
