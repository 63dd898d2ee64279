// Truncated power series over GF(3) and GF(2), and the coordinate-chain
// expansions at the origin whose vanishing orders drive the valuation and
// semigroup computations.

#include <cstdint>
#include <random>

#include "dlc/kernels.hpp"
#include "dlc/series.hpp"
#include "doctest.h"

using dlc::kern::npos;
using dlc::series::Ser2;
using dlc::series::Ser3;

namespace {
Ser3 random_ser3(std::mt19937_64& rng, std::size_t len) {
  Ser3 s(len);
  for (std::size_t i = 0; i < len; ++i)
    s.set(i, static_cast<unsigned>(rng() % 3));
  return s;
}
}  // namespace

TEST_CASE("ser3 get/set round trip and tail masking") {
  Ser3 s(130);
  s.set(0, 2);
  s.set(64, 1);
  s.set(129, 2);
  CHECK(s.get(0) == 2);
  CHECK(s.get(64) == 1);
  CHECK(s.get(129) == 2);
  CHECK(s.get(1) == 0);
  CHECK(s.first_nonzero() == 0);
  CHECK(s.first_nonzero(1) == 64);
  CHECK(s.first_nonzero(130) == npos);
  CHECK(s.popcount() == 3);
}

TEST_CASE("ser3 addition and negation act digitwise mod 3") {
  std::mt19937_64 rng(31);
  const auto a = random_ser3(rng, 200), b = random_ser3(rng, 200);
  const auto c = a + b;
  for (std::size_t i = 0; i < 200; ++i)
    CHECK(c.get(i) == (a.get(i) + b.get(i)) % 3);
  auto n = a;
  n.negate_in_place();
  CHECK((a + n).is_zero());
  auto d = a;
  d.axpy(b, 2);
  CHECK(d == a + b + b);
  CHECK(a - b == a + [&] { auto t = b; t.negate_in_place(); return t; }());
}

TEST_CASE("ser3 truncated product matches schoolbook convolution") {
  std::mt19937_64 rng(32);
  const std::size_t len = 96;
  const auto a = random_ser3(rng, len), b = random_ser3(rng, len);
  const auto c = a.mul(b);
  REQUIRE(c.length() == len);
  for (std::size_t k = 0; k < len; ++k) {
    unsigned acc = 0;
    for (std::size_t i = 0; i <= k; ++i) acc += a.get(i) * b.get(k - i);
    CHECK(c.get(k) == acc % 3);
  }
  CHECK(a.mul(b) == b.mul(a));
}

TEST_CASE("ser3 shifted axpy multiplies by a shifted scaled copy") {
  std::mt19937_64 rng(33);
  const auto b = random_ser3(rng, 150);
  auto c = random_ser3(rng, 150);
  const auto before = c;
  c.shifted_axpy(b, 40, 2);
  for (std::size_t i = 0; i < 150; ++i) {
    const unsigned fb = i >= 40 ? b.get(i - 40) : 0;
    CHECK(c.get(i) == (before.get(i) + 2 * fb) % 3);
  }
}

TEST_CASE("ser3 frobenius spread cubes the series") {
  std::mt19937_64 rng(34);
  const auto a = random_ser3(rng, 60);
  const auto cube = a.mul(a).mul(a);
  const auto spread = a.frob_spread(3).truncated(60);
  CHECK(cube == spread);
  // Digit placement: coefficient k lands at position 3k.
  const auto s9 = a.frob_spread(9);
  for (std::size_t k = 0; k < 60; ++k) {
    if (9 * k < s9.length()) CHECK(s9.get(9 * k) == a.get(k));
  }
}

TEST_CASE("ser2 mirrors the gf(2) semantics") {
  Ser2 s(100);
  s.set(3, 1);
  s.set(70, 1);
  CHECK(s.first_nonzero() == 3);
  CHECK(s.first_nonzero(4) == 70);
  auto t = s;
  t.add_in_place(s);
  CHECK(t.is_zero());
  const auto m = Ser2::monomial(100, 2);
  CHECK(s.mul(m).first_nonzero() == 5);
  const auto sq = s.mul(s);
  CHECK(sq == s.frob_spread(2));
}

TEST_CASE("ree chain series start at the tabulated vanishing orders") {
  const auto rs = dlc::series::ree_series(1, 1100);
  REQUIRE(rs.names.size() == 13);
  const std::uint64_t nu0[13] = {1,   4,   7,  10,   37, 64, 34,
                                 118, 307, 115, 1036, 145, 226};
  const std::uint64_t pole[13] = {729, 810, 891, 972,  999,  1026, 918,
                                  1002, 1035, 921, 1036, 1029, 1032};
  // Each vanishing order is m_inf minus the pole order of the paired
  // coordinate under the hyperplane duality (w8 pairs with the constant 1).
  const int partner[13] = {8, 12, 11, 5, 4, 3, 7, 6, 0, 9, -1, 2, 1};
  for (std::size_t i = 0; i < 13; ++i) {
    CAPTURE(rs.names[i]);
    CHECK(rs.coord[i].first_nonzero() == nu0[i]);
    const std::uint64_t partner_pole = partner[i] < 0 ? 0 : pole[partner[i]];
    CHECK(nu0[i] == 1036 - partner_pole);
  }
  CHECK(rs.v.first_nonzero() == 37);
  // v = w7 - w2 as series.
  const auto w2 = rs.coord[4], w7 = rs.coord[9];
  CHECK(rs.v == w7 - w2);
}

TEST_CASE("suzuki chain series start at the complementary valuations") {
  const auto ss = dlc::series::suzuki_series(1, 40);
  REQUIRE(ss.names.size() == 4);
  const std::uint64_t nu0[4] = {1, 3, 5, 13};
  for (std::size_t i = 0; i < 4; ++i) {
    CAPTURE(ss.names[i]);
    CHECK(ss.coord[i].first_nonzero() == nu0[i]);
  }
}

TEST_CASE("hermitian y-series solves its defining equation") {
  // y^q0 + y = x^(q0+1) with x = t the uniformizer at the origin branch.
  SUBCASE("characteristic 3") {
    const std::size_t prec = 81;
    const auto y = dlc::series::hermitian_y_series_p3(3, prec);
    const auto lhs = y.frob_spread(3).truncated(prec) + y;
    CHECK(lhs == Ser3::monomial(prec, 4));
    CHECK(y.first_nonzero() == 4);
  }
  SUBCASE("characteristic 2") {
    const std::size_t prec = 64;
    const auto y = dlc::series::hermitian_y_series_p2(4, prec);
    auto lhs = y.frob_spread(4);
    lhs.add_in_place(y);
    CHECK(lhs == Ser2::monomial(prec, 5));
    CHECK(y.first_nonzero() == 5);
  }
}
