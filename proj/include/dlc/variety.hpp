#pragma once

#include <cstdint>
#include <vector>

#include "dlc/curves.hpp"
#include "dlc/field.hpp"
#include "dlc/multipoly.hpp"

namespace dlc::variety {

struct PointSet {
  const gf::Field* field = nullptr;
  // Projective coordinate tuples aligned with the curve's coordinate list.
  std::vector<std::vector<std::uint32_t>> points;
};

// All rational points over GF(q^r): the affine chain points (Artin-Schreier
// fibers over each x) plus the distinguished point at infinity.  Refuses
// fields past the exp/log table limit.
PointSet enumerate_points(const curves::CurveDesc& c, std::uint32_t r);

// Solutions y of y^q0 + y = c (the Hermitian fiber equation), via the
// alpha-scaling reduction to the standard Artin-Schreier solver.
std::vector<std::uint32_t> hermitian_fiber(const gf::Field& F, std::uint32_t q0_deg,
                                           std::uint32_t c);

bool on_variety(const std::vector<poly::MultiPoly>& model, const gf::Field& F,
                const std::vector<std::uint32_t>& pt);

// Rank of the Jacobian matrix of the model equations at a point.  The model
// derivative polynomials are precomputed once and reused across points.
class JacobianEvaluator {
 public:
  explicit JacobianEvaluator(const std::vector<poly::MultiPoly>& model);
  std::size_t rank_at(const gf::Field& F, const std::vector<std::uint32_t>& pt) const;

 private:
  std::size_t nvars_ = 0;
  // Sparse rows: per equation, the list of (variable, derivative).
  std::vector<std::vector<std::pair<std::size_t, poly::MultiPoly>>> rows_;
};

// Rank of a dense matrix over F (rows of equal length), by Gaussian
// elimination.  Exposed for reuse by the automorphism solver.
std::size_t matrix_rank(const gf::Field& F, std::vector<std::vector<std::uint32_t>> rows);

// Deterministic seeded sample of chain points over GF(q^r); x values come
// from a fixed PRNG, fibers are taken in ascending element order.  Works in
// fields past the table limit (generic arithmetic).
PointSet sample_extension_points(const curves::CurveDesc& c, std::uint32_t r,
                                 std::size_t count, std::uint64_t seed);

}  // namespace dlc::variety
