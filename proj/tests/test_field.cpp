// Finite field arithmetic: ring axioms on sampled triples, inverses,
// Frobenius, trace, the Artin-Schreier solver, and subfield embeddings.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "dlc/field.hpp"
#include "doctest.h"

using dlc::gf::ASSolver;
using dlc::gf::Embedding;
using dlc::gf::Field;

TEST_CASE("field axioms hold on sampled triples") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 3},
                      {3, 3},
                      {2, 6},
                      {3, 6},
                      {2, 1},
                      {3, 1}}) {
    const Field& F = Field::get(p, n);
    CAPTURE(p);
    CAPTURE(n);
    std::mt19937_64 rng(21);
    const auto q = F.q();
    for (int i = 0; i < 200; ++i) {
      const auto a = static_cast<std::uint32_t>(rng() % q);
      const auto b = static_cast<std::uint32_t>(rng() % q);
      const auto c = static_cast<std::uint32_t>(rng() % q);
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, 0) == a);
      CHECK(F.mul(a, 1) == a);
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
    }
  }
}

TEST_CASE("pow and frob agree with repeated multiplication") {
  const Field& F = Field::get(3, 3);
  for (std::uint32_t a = 0; a < F.q(); ++a) {
    std::uint32_t acc = 1;
    for (int e = 0; e < 7; ++e) {
      CHECK(F.pow(a, e) == acc);
      acc = F.mul(acc, a);
    }
    CHECK(F.frob(a, 1) == F.pow(a, 3));
    CHECK(F.frob(a, 2) == F.pow(a, 9));
    CHECK(F.frob(a, 3) == a);  // full Frobenius orbit closes
  }
}

TEST_CASE("frobenius is additive and multiplicative") {
  const Field& F = Field::get(2, 6);
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto a = static_cast<std::uint32_t>(rng() % F.q());
    const auto b = static_cast<std::uint32_t>(rng() % F.q());
    CHECK(F.frob(F.add(a, b), 1) == F.add(F.frob(a, 1), F.frob(b, 1)));
    CHECK(F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1)));
  }
}

TEST_CASE("trace lands in the prime field and is balanced") {
  const Field& F = Field::get(3, 3);
  std::vector<std::size_t> counts(3, 0);
  for (std::uint32_t a = 0; a < F.q(); ++a) {
    const auto t = F.trace(a);
    REQUIRE(t < 3);
    ++counts[t];
  }
  // The trace is a surjective GF(p)-linear map, so every value is hit by
  // exactly q/p elements.
  CHECK(counts[0] == 9);
  CHECK(counts[1] == 9);
  CHECK(counts[2] == 9);
}

TEST_CASE("defining modulus is monic irreducible and deterministic") {
  const Field& F = Field::get(3, 3);
  const auto& d = F.desc();
  CHECK(d.p == 3);
  CHECK(d.n == 3);
  REQUIRE(d.modulus.size() == 4);
  CHECK(d.modulus[3] == 1);
  // Same field object on repeated lookup (identity, not just equality).
  CHECK(&Field::get(3, 3) == &F);
}

TEST_CASE("artin-schreier solver matches brute force") {
  for (auto [p, n, k] : {std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>{3, 3, 1},
                         {2, 6, 3},
                         {3, 6, 3}}) {
    const Field& F = Field::get(p, n);
    CAPTURE(p);
    CAPTURE(n);
    CAPTURE(k);
    const ASSolver solver(F, k);
    for (std::uint32_t c = 0; c < F.q() && c < 200; ++c) {
      std::set<std::uint32_t> expect;
      for (std::uint32_t y = 0; y < F.q(); ++y)
        if (F.sub(F.frob(y, k), y) == c) expect.insert(y);
      const auto got = solver.solve(c);
      CHECK(std::set<std::uint32_t>(got.begin(), got.end()) == expect);
      if (!got.empty()) CHECK(got.size() == solver.kernel_size());
    }
  }
}

TEST_CASE("subfield embedding is a field homomorphism") {
  const Field& small = Field::get(3, 3);
  const Field& big = Field::get(3, 6);
  const Embedding emb(small, big);
  CHECK(emb(0) == 0);
  CHECK(emb(1) == 1);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto a = static_cast<std::uint32_t>(rng() % small.q());
    const auto b = static_cast<std::uint32_t>(rng() % small.q());
    CHECK(emb(small.add(a, b)) == big.add(emb(a), emb(b)));
    CHECK(emb(small.mul(a, b)) == big.mul(emb(a), emb(b)));
  }
  // Images of distinct elements stay distinct.
  std::set<std::uint32_t> images;
  for (std::uint32_t a = 0; a < small.q(); ++a) images.insert(emb(a));
  CHECK(images.size() == small.q());
}
