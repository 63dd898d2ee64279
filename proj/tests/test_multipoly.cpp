// Sparse exact multivariate polynomials: arithmetic, canonical form, the
// p-power twist, calculus, evaluation, and the JSON round trip.

#include <cstdint>
#include <string>
#include <vector>

#include "dlc/field.hpp"
#include "dlc/multipoly.hpp"
#include "doctest.h"

using dlc::gf::Field;
using dlc::poly::MultiPoly;

namespace {
const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};

MultiPoly var(const std::vector<std::string>& cs, std::size_t i) {
  return MultiPoly::variable(cs, i);
}
}  // namespace

TEST_CASE("normalize merges duplicates and drops zeros") {
  MultiPoly f(kXY);
  f.add_term({1, 0}, 2);
  f.add_term({1, 0}, 3);
  f.add_term({0, 1}, 4);
  f.add_term({0, 1}, -4);
  f.normalize();
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].coef == 5);
  CHECK(f.total_degree() == 1);
}

TEST_CASE("ring operations satisfy the expected identities") {
  const auto x = var(kXYZ, 0), y = var(kXYZ, 1), z = var(kXYZ, 2);
  const auto f = x * x + y.scaled(2) - z;
  const auto g = y * z + MultiPoly::constant(kXYZ, 7);
  CHECK((f + g - g).key(11) == f.key(11));
  CHECK((f * g).key(11) == (g * f).key(11));
  CHECK(((f + g) * z).key(11) == (f * z + g * z).key(11));
  CHECK(f.pow(3).key(11) == (f * f * f).key(11));
  CHECK(f.pow(0).terms().size() == 1);
  CHECK((f - f).is_zero());
}

TEST_CASE("canonical form is scale-invariant and key-stable") {
  const auto x = var(kXY, 0), y = var(kXY, 1);
  const auto f = x * x + y.scaled(2);
  const auto g = f.scaled(2);  // same polynomial up to a unit mod 3
  CHECK(f.key(3) == g.key(3));
  CHECK(f.canonical(3).to_string() == g.canonical(3).to_string());
  // Different polynomials keep different keys.
  CHECK(f.key(3) != (x * x + y).key(3));
  // Coefficients 0 mod p vanish from the canonical form.
  CHECK((f.scaled(3)).canonical(3).is_zero());
}

TEST_CASE("aligned_to permutes coordinates without changing the polynomial") {
  const auto x = var(kXY, 0), y = var(kXY, 1);
  const auto f = x * x * y.scaled(2) + y;
  const auto g = f.aligned_to({"y", "x"});
  const Field& F = Field::get(3, 1);
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = 0; b < 3; ++b)
      CHECK(f.eval(F, {a, b}) == g.eval(F, {b, a}));
  // Unused coordinates may be dropped; used ones must not be.
  const auto h = (x * x).aligned_to({"x"});
  CHECK(h.coords().size() == 1);
  CHECK_THROWS(f.aligned_to({"x"}));
}

TEST_CASE("evaluation matches a hand computation") {
  const Field& F = Field::get(3, 3);
  const auto x = var(kXY, 0), y = var(kXY, 1);
  const auto f = x.pow(2) * y + y.scaled(2) + MultiPoly::constant(kXY, 1);
  for (std::uint32_t a = 0; a < 27; a += 5) {
    for (std::uint32_t b = 0; b < 27; b += 7) {
      const auto expect =
          F.add(F.add(F.mul(F.mul(a, a), b), F.mul(2, b)), 1);
      CHECK(f.eval(F, {a, b}) == expect);
    }
  }
}

TEST_CASE("twist raises exponents as the p-power map") {
  const Field& F = Field::get(3, 3);
  const auto x = var(kXY, 0), y = var(kXY, 1);
  const auto f = x * y.scaled(2) + x;
  const auto t = f.twist(3);
  // f^3 termwise: coefficients in GF(3) are fixed by the cube.
  for (std::uint32_t a = 0; a < 27; a += 4)
    for (std::uint32_t b = 0; b < 27; b += 6)
      CHECK(t.eval(F, {a, b}) == F.pow(f.eval(F, {a, b}), 3));
}

TEST_CASE("derivative follows linearity and the product rule") {
  const auto x = var(kXY, 0), y = var(kXY, 1);
  const auto f = x.pow(3) + x * y.scaled(5);
  const auto g = y.pow(2) + x;
  const auto left = (f * g).derivative(0);
  const auto right = f.derivative(0) * g + f * g.derivative(0);
  CHECK(left.key(101) == right.key(101));
  // d/dx x^3 = 3x^2, which survives over the integers and dies mod 3.
  CHECK(x.pow(3).derivative(0).key(101) == x.pow(2).scaled(3).key(101));
  CHECK(x.pow(3).derivative(0).canonical(3).is_zero());
}

TEST_CASE("substitute replaces a coordinate by a polynomial") {
  const auto x = var(kXYZ, 0), y = var(kXYZ, 1), z = var(kXYZ, 2);
  const auto f = x * y + z;
  const auto g = f.substitute(1, z - x);  // y := z - x
  CHECK(g.key(7) == (x * (z - x) + z).key(7));
}

TEST_CASE("homogenize pads to constant total degree") {
  const auto x = var(kXYZ, 0), y = var(kXYZ, 1);
  const auto f = x.pow(3) + y + MultiPoly::constant(kXYZ, 2);
  const auto h = f.homogenize(2);  // pad with z
  for (const auto& t : h.terms()) {
    std::size_t deg = 0;
    for (auto e : t.exp) deg += e;
    CHECK(deg == 3);
  }
  // Setting the padding coordinate to 1 recovers the original.
  CHECK(h.substitute(2, MultiPoly::constant(kXYZ, 1)).key(5) == f.key(5));
}

TEST_CASE("json round trip preserves the polynomial") {
  const auto x = var(kXYZ, 0), z = var(kXYZ, 2);
  const auto f = x.pow(4).scaled(2) - z * x + MultiPoly::constant(kXYZ, 9);
  const auto back = MultiPoly::from_json(f.to_json());
  CHECK(back.coords() == f.coords());
  CHECK(back.key(13) == f.key(13));
}

TEST_CASE("find_coord and total_degree report structure") {
  const auto x = var(kXYZ, 0), y = var(kXYZ, 1);
  const auto f = x * y.pow(3);
  CHECK(f.find_coord("y") == 1);
  CHECK(f.find_coord("w") == MultiPoly::npos);
  CHECK(f.total_degree() == 4);
}
