// Curve descriptors: invariants of the three families, exact point counts
// through two independent evaluation paths, and the pole/vanishing pairing.

#include <algorithm>
#include <cstdint>
#include <set>

#include "dlc/curves.hpp"
#include "dlc/field.hpp"
#include "doctest.h"

using dlc::curves::CurveDesc;
using dlc::curves::Family;

namespace {
void check_desc_consistency(const CurveDesc& c) {
  REQUIRE(c.coords.size() >= 3);
  CHECK(c.coords.front() == "t");
  CHECK(c.pole_orders.size() == c.coords.size());
  CHECK(c.nu0.size() == c.coords.size());
  CHECK(c.partner.size() == c.coords.size());
  CHECK(c.pole_orders.front() == 0);  // the constant coordinate
  const std::uint64_t m_inf =
      *std::max_element(c.pole_orders.begin(), c.pole_orders.end());
  for (std::size_t i = 0; i < c.coords.size(); ++i) {
    const std::size_t j = c.partner[i];
    REQUIRE(j < c.coords.size());
    CHECK(c.partner[j] == i);  // involution
    CHECK(c.pole_orders[i] + c.nu0[j] == m_inf);
  }
}
}  // namespace

TEST_CASE("hermitian descriptor invariants") {
  const auto c = dlc::curves::hermitian_curve(3);
  CHECK(c.p == 3);
  CHECK(c.q == 9);
  CHECK(c.genus == 3);  // q0 (q0 - 1) / 2
  CHECK(c.coords == std::vector<std::string>{"t", "x", "y"});
  CHECK(c.pole_orders == std::vector<std::uint64_t>{0, 3, 4});
  check_desc_consistency(c);

  const auto c8 = dlc::curves::hermitian_curve(8);
  CHECK(c8.q == 64);
  CHECK(c8.genus == 28);
  check_desc_consistency(c8);
}

TEST_CASE("suzuki descriptor invariants") {
  const auto c = dlc::curves::suzuki_curve(1);
  CHECK(c.p == 2);
  CHECK(c.q0 == 2);
  CHECK(c.q == 8);
  CHECK(c.genus == 14);  // q0 (q - 1)
  CHECK(c.coords ==
        std::vector<std::string>{"t", "x", "y", "z", "w"});
  CHECK(c.pole_orders == std::vector<std::uint64_t>{0, 8, 10, 12, 13});
  CHECK(c.nu0 == std::vector<std::uint64_t>{0, 1, 3, 5, 13});
  check_desc_consistency(c);
  // 2g - 2 = 26 = 2 * 13: the full pole chain is canonical-like.
  CHECK(2 * c.genus - 2 == 2 * c.pole_orders.back());
}

TEST_CASE("ree descriptor invariants") {
  const auto c = dlc::curves::ree_curve(1);
  CHECK(c.p == 3);
  CHECK(c.q0 == 3);
  CHECK(c.q == 27);
  CHECK(c.genus == 3627);
  REQUIRE(c.coords.size() == 14);
  CHECK(c.coords[1] == "x");
  CHECK(c.coords[13] == "w10");
  const std::vector<std::uint64_t> poles = {0,    729,  810,  891, 972,
                                            999,  1026, 918,  1002, 1035,
                                            921,  1036, 1029, 1032};
  CHECK(c.pole_orders == poles);
  const std::vector<std::uint64_t> nu0 = {0,   1,   4,   7,  10,   37, 64,
                                          34,  118, 307, 115, 1036, 145, 226};
  CHECK(c.nu0 == nu0);
  check_desc_consistency(c);
  // 7 m_inf = 2g - 2 pins the top pole to the canonical degree.
  CHECK(7 * c.pole_orders[11] == 2 * c.genus - 2);  // w8
}

TEST_CASE("closed-form counts match the linear recurrences") {
  for (const auto& c : {dlc::curves::hermitian_curve(3),
                        dlc::curves::suzuki_curve(1),
                        dlc::curves::ree_curve(1)}) {
    CAPTURE(dlc::curves::family_name(c.family));
    for (std::uint32_t r = 1; r <= 6; ++r) {
      CAPTURE(r);
      CHECK(dlc::curves::point_count(c, r) ==
            dlc::curves::point_count_recurrence(c, r));
    }
  }
}

TEST_CASE("reference point counts") {
  const auto her = dlc::curves::hermitian_curve(3);
  CHECK(dlc::curves::point_count(her, 1) == 28);  // q^(3/2) + ... maximal
  const auto suz = dlc::curves::suzuki_curve(1);
  CHECK(dlc::curves::point_count(suz, 1) == 65);  // q^2 + 1
  CHECK(dlc::curves::point_count(suz, 4) == 5889);
  const auto ree = dlc::curves::ree_curve(1);
  CHECK(dlc::curves::point_count(ree, 1) == 19684);  // q^3 + 1
  CHECK(dlc::curves::point_count_str(ree, 1) == "19684");
}

TEST_CASE("maximality over extension fields") {
  const auto her = dlc::curves::hermitian_curve(3);
  CHECK(dlc::curves::is_maximal(her, 1));
  CHECK_FALSE(dlc::curves::is_maximal(her, 2));
  CHECK(dlc::curves::is_maximal(her, 3));

  const auto suz = dlc::curves::suzuki_curve(1);
  CHECK_FALSE(dlc::curves::is_maximal(suz, 1));
  CHECK(dlc::curves::is_maximal(suz, 4));

  const auto ree = dlc::curves::ree_curve(1);
  CHECK_FALSE(dlc::curves::is_maximal(ree, 1));
  CHECK(dlc::curves::is_maximal(ree, 6));
}

TEST_CASE("chain evaluation produces distinct projective points") {
  const auto c = dlc::curves::ree_curve(1);
  const auto& F = dlc::gf::Field::get(3, 3);
  std::set<std::vector<std::uint32_t>> pts;
  for (std::uint32_t x = 0; x < 27; ++x)
    for (std::uint32_t y1 = 0; y1 < 27; ++y1)
      for (std::uint32_t y2 = 0; y2 < 27; ++y2)
        pts.insert(dlc::curves::ree_point(c, F, x, y1, y2));
  pts.insert(dlc::curves::infinity_point(c));
  CHECK(pts.size() == 19684);
  // The affine origin has every nonconstant coordinate zero.
  const auto origin = dlc::curves::ree_point(c, F, 0, 0, 0);
  REQUIRE(origin.size() == 14);
  CHECK(origin[0] == 1);
  for (std::size_t i = 1; i < origin.size(); ++i) CHECK(origin[i] == 0);
  CHECK(dlc::curves::ree_v(c, F, 0, 0, 0) == 0);
  // The infinity point is the unit vector in the top-pole coordinate (w8).
  const auto inf = dlc::curves::infinity_point(c);
  REQUIRE(inf.size() == 14);
  CHECK(inf[11] == 1);
}

TEST_CASE("suzuki and hermitian chain evaluation") {
  const auto suz = dlc::curves::suzuki_curve(1);
  const auto& F8 = dlc::gf::Field::get(2, 3);
  std::set<std::vector<std::uint32_t>> spts;
  for (std::uint32_t x = 0; x < 8; ++x)
    for (std::uint32_t y = 0; y < 8; ++y)
      spts.insert(dlc::curves::suzuki_point(suz, F8, x, y));
  spts.insert(dlc::curves::infinity_point(suz));
  CHECK(spts.size() == 65);

  const auto her = dlc::curves::hermitian_curve(3);
  const auto& F9 = dlc::gf::Field::get(3, 2);
  std::set<std::vector<std::uint32_t>> hpts;
  for (std::uint32_t x = 0; x < 9; ++x)
    for (std::uint32_t y = 0; y < 9; ++y) {
      const auto pt = dlc::curves::hermitian_point(her, F9, x, y);
      // Only points on y^q0 + y = x^(q0+1) are returned as affine points.
      if (F9.add(F9.frob(y, 1), y) == F9.pow(x, 4)) hpts.insert(pt);
    }
  hpts.insert(dlc::curves::infinity_point(her));
  CHECK(hpts.size() == 28);
}
