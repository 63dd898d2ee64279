#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dlc/curves.hpp"
#include "dlc/field.hpp"
#include "dlc/multipoly.hpp"

namespace dlc::autom {

// Element of the stabilizer of the infinite place: x -> alpha*x + beta with
// the chain coordinates transformed accordingly.  delta is used only by the
// three-generator (Ree) chain; the Hermitian family constrains gamma by
// gamma^q0 + gamma = beta^(q0+1).
struct AutParams {
  std::uint32_t alpha = 1;
  std::uint32_t beta = 0;
  std::uint32_t gamma = 0;
  std::uint32_t delta = 0;
  bool operator==(const AutParams&) const = default;
};

// Uniform random stabilizer element (alpha nonzero; Hermitian gamma drawn
// from the fiber of its constraint).
AutParams random_params(const curves::CurveDesc& c, const gf::Field& F,
                        std::mt19937_64& rng);

// Parameters of "first, then second" (composition in the group).
AutParams compose(const curves::CurveDesc& c, const gf::Field& F,
                  const AutParams& first, const AutParams& second);

// Image of a projective chain point (t = 1 or the infinite point, which is
// fixed).  The generator coordinates are mapped affinely and the chain is
// recomputed, so the result is a full projective tuple.
std::vector<std::uint32_t> apply_affine(const curves::CurveDesc& c,
                                        const gf::Field& F, const AutParams& a,
                                        const std::vector<std::uint32_t>& pt);

using Matrix = std::vector<std::vector<std::uint32_t>>;

// The reference coordinate-span matrix: row i expresses coord_i evaluated at
// the image point as a combination of coordinate functions, integer
// coefficients reduced mod p.  Rows with no usable reference formula are
// nullopt (the Ree w5 row; the Ree w7 row is the sum of the w2 row and the
// auxiliary-function row, assembled here).
std::vector<std::optional<std::vector<std::uint32_t>>> claimed_matrix(
    const curves::CurveDesc& c, const gf::Field& F, const AutParams& a);

// The matrix derived independently of any formula: each row is solved from
// evaluations at enough chain points to pin the coefficients (the coordinate
// functions are linearly independent, so a nonsingular sample exists).
Matrix derived_matrix(const curves::CurveDesc& c, const gf::Field& F,
                      const AutParams& a, std::uint64_t seed);

// Column order sorted by ascending pole order; the span matrix of a
// stabilizer element must be lower triangular in this order.
std::vector<std::size_t> pole_order_basis(const curves::CurveDesc& c);
bool is_lower_triangular(const curves::CurveDesc& c, const Matrix& m);

struct RowIssue {
  std::size_t coord = 0;       // row index in curve coordinate order
  bool missing = false;        // no reference formula; row was derived
  std::size_t mismatches = 0;  // points where the reference row disagreed
  std::vector<std::uint32_t> corrected;  // row actually used
};

struct PsiReport {
  AutParams params;
  bool variety_stable = true;
  bool triangular = true;
  bool matrix_consistent = true;  // corrected matrix reproduces images pointwise
  std::vector<RowIssue> issues;
};

struct ValidationOptions {
  std::size_t psi_samples = 1000;
  std::size_t point_samples = 100;
  std::uint64_t seed = 7;
  // Negative-control hook: add 1 to this coordinate's leading claimed entry
  // before validation; the run must then report mismatches on that row.
  int corrupt_coord = -1;
  std::size_t detailed_reports = 4;  // how many PsiReports to keep verbatim
};

struct ValidationSummary {
  std::size_t psi_checked = 0;
  std::size_t points_per_psi = 0;
  std::size_t variety_failures = 0;
  std::size_t triangularity_failures = 0;
  std::size_t consistency_failures = 0;
  std::size_t composition_failures = 0;
  std::size_t orbit_size = 0;       // orbit of the chain origin under alpha=1
  bool orbit_is_affine_set = false; // orbit == all affine chain points
  std::vector<std::size_t> corrected_rows_by_coord;  // counts per coordinate
  std::vector<std::size_t> validated_rows_by_coord;
  std::vector<PsiReport> samples;
  bool ok() const {
    return variety_failures == 0 && triangularity_failures == 0 &&
           consistency_failures == 0 && composition_failures == 0 &&
           orbit_is_affine_set;
  }
};

// Seeded sweep over random stabilizer elements: variety stability, pointwise
// row validation (with solver-derived corrections), triangularity, the
// composition law, and the orbit of the origin under the alpha = 1 subgroup.
ValidationSummary validate_stabilizer(const curves::CurveDesc& c,
                                      const gf::Field& F,
                                      const std::vector<poly::MultiPoly>& model,
                                      const ValidationOptions& opt);

// The extra involution: a signed coordinate permutation pairing each
// coordinate with its pole-complement partner.  The sign pattern is settled
// by sweeping every rational point through each candidate; exactly one
// pattern must stabilize the variety.
struct Involution {
  std::vector<std::size_t> perm;    // image coordinate index
  std::vector<std::uint32_t> sign;  // field constant (1 or p-1)
  std::string variant;              // which sign pattern validated
};

Involution involution(const curves::CurveDesc& c, const gf::Field& F,
                      const std::vector<poly::MultiPoly>& model);

std::vector<std::uint32_t> apply_involution(const gf::Field& F,
                                            const Involution& inv,
                                            const std::vector<std::uint32_t>& pt);

struct InvolutionReport {
  std::string variant;
  std::size_t points_checked = 0;
  bool preserves_variety = false;
  bool square_is_identity = false;
  bool swaps_infinity_and_origin = false;
  bool matches_partner_pairing = false;
  bool ok() const {
    return preserves_variety && square_is_identity &&
           swaps_infinity_and_origin && matches_partner_pairing;
  }
};

InvolutionReport verify_involution(const curves::CurveDesc& c,
                                   const gf::Field& F,
                                   const std::vector<poly::MultiPoly>& model,
                                   const Involution& inv);

}  // namespace dlc::autom
