// Mechanical generation of the defining equations from labeled complete
// graphs, checked against the frozen fixtures in data/.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dlc/curves.hpp"
#include "dlc/graph_eq.hpp"
#include "dlc/multipoly.hpp"
#include "dlc/report.hpp"
#include "doctest.h"

using dlc::grapheq::edge_index;
using dlc::poly::MultiPoly;

namespace {
std::multiset<std::string> canonical_keys(const std::vector<MultiPoly>& eqs,
                                          std::uint32_t p) {
  std::multiset<std::string> out;
  for (const auto& f : eqs) out.insert(f.key(p));
  return out;
}
}  // namespace

TEST_CASE("edge_index enumerates the upper triangle in lex order") {
  std::size_t next = 0;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j)
      CHECK(edge_index(7, i, j) == next++);
  CHECK(next == 21);
}

TEST_CASE("ree generation: counts, duplicate, fixture match") {
  const auto c = dlc::curves::ree_curve(1);
  const auto g = dlc::grapheq::ree_graph(c);
  REQUIRE(g.n == 7);
  REQUIRE(g.labels.size() == 21);
  REQUIRE(g.plucker_labels.size() == 21);
  const auto gen = dlc::grapheq::generate(g);

  CHECK(gen.triangles.size() == 35);
  CHECK(gen.triangles_twisted.size() == 35);
  CHECK(gen.quadrics.size() == 35);
  REQUIRE(gen.pairing.has_value());
  CHECK(gen.all.size() == 106);
  CHECK(gen.distinct.size() == 105);

  // Exactly one collision, and it is the expected quadric.
  REQUIRE(gen.duplicate_keys.size() == 1);
  MultiPoly dup = MultiPoly::from_string("y1*w10 + y2*w9 + w4*w5");
  CHECK(gen.duplicate_keys[0] == dup.key(3));

  // Byte-level agreement with the frozen equation set, as multisets of
  // canonical keys (generation order is not part of the contract).
  const auto fix = dlc::report::load_equations("data/ree_model_equations.json");
  REQUIRE(fix.equations.size() == 105);
  CHECK(canonical_keys(gen.distinct, 3) == canonical_keys(fix.equations, 3));
}

TEST_CASE("ree generation is sensitive to a perturbed edge label") {
  const auto c = dlc::curves::ree_curve(1);
  auto g = dlc::grapheq::ree_graph(c);
  // Negative control: corrupt one edge label and require a mismatch.
  g.labels[edge_index(7, 2, 5)] =
      g.labels[edge_index(7, 2, 5)] + MultiPoly::from_string("x");
  const auto gen = dlc::grapheq::generate(g);
  const auto fix = dlc::report::load_equations("data/ree_model_equations.json");
  CHECK(canonical_keys(gen.distinct, 3) != canonical_keys(fix.equations, 3));
}

TEST_CASE("suzuki and hermitian generation match their fixtures") {
  const auto suz = dlc::curves::suzuki_curve(1);
  const auto gs = dlc::grapheq::generate(dlc::grapheq::suzuki_graph(suz));
  CHECK(gs.triangles.size() == 4);
  CHECK(gs.quadrics.size() == 1);
  CHECK(gs.distinct.size() == 5);
  const auto sfix =
      dlc::report::load_equations("data/suzuki_model_equations.json");
  CHECK(canonical_keys(gs.distinct, 2) == canonical_keys(sfix.equations, 2));

  const auto her = dlc::curves::hermitian_curve(3);
  const auto gh = dlc::grapheq::generate(dlc::grapheq::hermitian_graph(her));
  CHECK(gh.distinct.size() == 1);
  const auto hfix =
      dlc::report::load_equations("data/hermitian_model_equation.json");
  CHECK(canonical_keys(gh.distinct, 3) == canonical_keys(hfix.equations, 3));
}

TEST_CASE("eliminating v collapses both label conventions to one model") {
  // Triangles name the dependent edges through w7, the quadrics through v;
  // after the substitution v = w7 - w2 the two conventions agree.
  const auto c = dlc::curves::ree_curve(1);
  auto g = dlc::grapheq::ree_graph(c);
  const auto gen_two = dlc::grapheq::generate(g);
  g.plucker_labels.clear();  // force the quadrics onto the triangle labels
  const auto gen_one = dlc::grapheq::generate(g);
  CHECK(canonical_keys(gen_two.distinct, 3) !=
        canonical_keys(gen_one.distinct, 3));

  auto collapse = [](const std::vector<MultiPoly>& eqs) {
    std::vector<MultiPoly> out;
    for (const auto& f : eqs) out.push_back(dlc::grapheq::eliminate_v(f));
    return out;
  };
  CHECK(canonical_keys(collapse(gen_two.distinct), 3) ==
        canonical_keys(collapse(gen_one.distinct), 3));
}

TEST_CASE("eliminate_v substitutes and drops the auxiliary coordinate") {
  const auto f = MultiPoly::from_string("v*x + w2");
  const auto e = dlc::grapheq::eliminate_v(f);
  for (const auto& name : e.coords()) CHECK(name != "v");
  const auto expect = MultiPoly::from_string("w7*x - w2*x + w2");
  CHECK(e.canonical(3).to_string() == expect.canonical(3).to_string());
  // Identity on polynomials that never mention v.
  const auto g = MultiPoly::from_string("x^2 + y1");
  CHECK(dlc::grapheq::eliminate_v(g).canonical(3).to_string() ==
        g.canonical(3).to_string());
}

TEST_CASE("projective model equations are homogeneous and v-free") {
  const auto c = dlc::curves::ree_curve(1);
  const auto gen = dlc::grapheq::generate(dlc::grapheq::ree_graph(c));
  const auto model = dlc::grapheq::to_model(c, gen.distinct);
  CHECK(model.size() == gen.distinct.size());
  for (const auto& f : model) {
    REQUIRE(!f.terms().empty());
    // Homogeneous: every term has the same total degree.
    const auto deg = f.total_degree();
    for (const auto& t : f.terms()) {
      std::uint64_t d = 0;
      for (auto e : t.exp) d += e;
      CHECK(d == deg);
    }
    // Aligned with the projective coordinates; no auxiliary v.
    CHECK(f.coords() == c.coords);
  }
}
