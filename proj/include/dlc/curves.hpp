#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlc/field.hpp"

namespace dlc::curves {

enum class Family { hermitian, suzuki, ree };

std::string family_name(Family f);

struct CurveDesc {
  Family family{};
  std::uint32_t p = 0;          // characteristic
  std::uint32_t m = 1;          // tower parameter (suzuki/ree)
  std::uint64_t q0 = 0, q = 0;  // q = p * q0^2 for suzuki/ree, q = q0^2 hermitian
  std::uint32_t base_degree = 0;  // GF(p^base_degree) is the point field
  std::uint64_t genus = 0;
  std::vector<std::string> coords;         // projective names, "t" first
  std::vector<std::uint64_t> pole_orders;  // at P_inf, aligned ("t" -> 0)
  std::vector<std::uint64_t> nu0;          // at the origin point, aligned
  // The coordinate pairing induced by the involution that swaps the origin
  // with P_inf; satisfies pole(f) + nu0(partner(f)) = max pole order.
  std::vector<std::size_t> partner;
};

CurveDesc hermitian_curve(std::uint32_t q0);  // q0 in {2,3,4,8,9}
CurveDesc suzuki_curve(std::uint32_t m);      // q = 2^(2m+1), m in [1,5]
CurveDesc ree_curve(std::uint32_t m);         // q = 3^(2m+1), m in [1,3]

// Number of rational points over GF(q^r).
//
// The primary evaluation is the exact closed form.  For the Ree curve the
// reciprocal-root sums are 2 q^(r/2) cos(5 pi r / 6) and
// 2 q^(r/2) cos(pi r / 2); both are evaluated with exact Z[sqrt(3)]
// arithmetic from the period-12 table of 2cos values, and integrality is
// asserted.  The Suzuki analogue uses exact Gaussian-integer powers of
// (-1 +/- i); Hermitian uses (-q0)^r.  Throws std::overflow_error when the
// intermediate values leave the 128-bit range.
std::uint64_t point_count(const CurveDesc& c, std::uint32_t r);

// The same counts from the integer linear recurrences (independent path,
// used as a cross-check against the closed forms).
std::uint64_t point_count_recurrence(const CurveDesc& c, std::uint32_t r);

// Exact decimal rendering of the count; covers values past the uint64 range
// as long as the 128-bit intermediates do not overflow.
std::string point_count_str(const CurveDesc& c, std::uint32_t r);

// Whether GF(q^r) attains the Hasse-Weil upper bound.
bool is_maximal(const CurveDesc& c, std::uint32_t r);

// Full projective points from the affine generators, computed through the
// coordinate chains over any field of the right characteristic.
std::vector<std::uint32_t> ree_point(const CurveDesc& c, const gf::Field& F,
                                     std::uint32_t x, std::uint32_t y1,
                                     std::uint32_t y2);
// The auxiliary function v at an affine point (not a projective coordinate).
std::uint32_t ree_v(const CurveDesc& c, const gf::Field& F, std::uint32_t x,
                    std::uint32_t y1, std::uint32_t y2);
std::vector<std::uint32_t> suzuki_point(const CurveDesc& c, const gf::Field& F,
                                        std::uint32_t x, std::uint32_t y);
std::vector<std::uint32_t> hermitian_point(const CurveDesc& c,
                                           const gf::Field& F, std::uint32_t x,
                                           std::uint32_t y);
// The distinguished point at infinity (unit in the top-pole coordinate).
std::vector<std::uint32_t> infinity_point(const CurveDesc& c);

}  // namespace dlc::curves
