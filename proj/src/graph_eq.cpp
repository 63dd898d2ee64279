#include "dlc/graph_eq.hpp"

#include <map>
#include <stdexcept>

namespace dlc::grapheq {

using poly::MultiPoly;

std::size_t edge_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= j || j >= n) throw std::invalid_argument("edge_index wants i < j < n");
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

namespace {

std::size_t index_of(const std::vector<std::string>& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  throw std::invalid_argument("unknown variable " + name);
}

struct Builder {
  std::vector<std::string> vars;
  MultiPoly operator()(const std::string& name) const {
    return MultiPoly::variable(vars, index_of(vars, name));
  }
  MultiPoly c(std::int64_t k) const { return MultiPoly::constant(vars, k); }
};

}  // namespace

LabeledGraph ree_graph(const curves::CurveDesc& c) {
  if (c.family != curves::Family::ree) throw std::invalid_argument("ree_graph wants a ree curve");
  LabeledGraph g;
  g.p = 3;
  g.q0 = c.q0;
  g.spread = 3 * c.q0;
  g.n = 7;
  g.vars = {"x", "y1", "y2", "w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9", "w10", "v"};
  Builder B{g.vars};
  g.rows = {B.c(1), B("x"), B("w1"), B("w2"), B("w3"), B("w6"), B("w8")};
  g.labels.resize(21, MultiPoly(g.vars));
  auto L = [&](std::size_t i, std::size_t j, MultiPoly f) { g.labels[edge_index(7, i, j)] = std::move(f); };
  L(0, 1, B.c(1));
  L(0, 2, B("x"));
  L(0, 3, B("y1"));
  L(0, 4, B("y2"));
  L(0, 5, B("w4"));
  L(0, 6, B("w7"));
  L(1, 2, B("y1"));
  L(1, 3, B("y2"));
  L(1, 4, B("w1"));
  L(1, 5, (B("w7") + B("w2")).scaled(-1));
  L(1, 6, B("w5").scaled(-1));
  L(2, 3, B("w4").scaled(-1));
  L(2, 4, B("v").scaled(-1));
  L(2, 5, B("w3").scaled(-1));
  L(2, 6, B("w9").scaled(-1));
  L(3, 4, B("w5").scaled(-1));
  L(3, 5, B("w9"));
  L(3, 6, B("w10"));
  L(4, 5, B("w10").scaled(-1));
  L(4, 6, B("w6").scaled(-1));
  L(5, 6, B("w8").scaled(-1));
  // The quadric set names the two w7-bearing edges through v = w7 - w2
  // instead; the third dependent edge label (-v) is shared by both sets.
  g.plucker_labels = g.labels;
  g.plucker_labels[edge_index(7, 0, 6)] = B("w2") + B("v");
  g.plucker_labels[edge_index(7, 1, 5)] = B("w2") - B("v");
  g.with_label_twisted = true;
  g.with_vertex_pairing = true;
  return g;
}

LabeledGraph suzuki_graph(const curves::CurveDesc& c) {
  if (c.family != curves::Family::suzuki) throw std::invalid_argument("suzuki_graph wants a suzuki curve");
  LabeledGraph g;
  g.p = 2;
  g.q0 = c.q0;
  g.spread = 2 * c.q0;
  g.n = 4;
  g.vars = {"x", "y", "z", "w"};
  Builder B{g.vars};
  g.rows = {B.c(1), B("x"), B("z"), B("w")};
  g.labels.resize(6, MultiPoly(g.vars));
  auto L = [&](std::size_t i, std::size_t j, MultiPoly f) { g.labels[edge_index(4, i, j)] = std::move(f); };
  L(0, 1, B.c(1));
  L(0, 2, B("x"));
  L(0, 3, B("y"));
  L(1, 2, B("y"));
  L(1, 3, B("z"));
  L(2, 3, B("w"));
  return g;
}

LabeledGraph hermitian_graph(const curves::CurveDesc& c) {
  if (c.family != curves::Family::hermitian)
    throw std::invalid_argument("hermitian_graph wants a hermitian curve");
  LabeledGraph g;
  g.p = c.p;
  g.q0 = c.q0;
  g.spread = (std::uint64_t)c.p * c.q0;
  g.n = 3;
  g.vars = {"x", "y"};
  Builder B{g.vars};
  g.rows = {B.c(1), B("x"), B("y")};
  g.labels.resize(3, MultiPoly(g.vars));
  auto L = [&](std::size_t i, std::size_t j, MultiPoly f) { g.labels[edge_index(3, i, j)] = std::move(f); };
  L(0, 1, B.c(1));
  L(0, 2, B("x"));
  L(1, 2, B("y"));
  return g;
}

Generated generate(const LabeledGraph& g) {
  if (g.q0 == 0 || g.rows.size() != g.n || g.labels.size() != g.n * (g.n - 1) / 2)
    throw std::invalid_argument("malformed labeled graph");
  if (!g.plucker_labels.empty() && g.plucker_labels.size() != g.labels.size())
    throw std::invalid_argument("plucker label count mismatch");
  Generated out;
  auto L = [&](std::size_t i, std::size_t j) -> const MultiPoly& {
    return g.labels[edge_index(g.n, i, j)];
  };
  const std::uint32_t q0 = (std::uint32_t)g.q0, sp = (std::uint32_t)g.spread;

  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i + 1; j < g.n; ++j)
      for (std::size_t k = j + 1; k < g.n; ++k) {
        out.triangles.push_back(L(j, k) * g.rows[i].twist(q0) - L(i, k) * g.rows[j].twist(q0) +
                                L(i, j) * g.rows[k].twist(q0));
        if (g.with_label_twisted)
          out.triangles_twisted.push_back(L(j, k).twist(sp) * g.rows[i] -
                                          L(i, k).twist(sp) * g.rows[j] +
                                          L(i, j).twist(sp) * g.rows[k]);
      }

  if (g.with_vertex_pairing) {
    MultiPoly s(g.vars);
    for (std::size_t i = 0; 2 * i + 1 < g.n; ++i) s = s + g.rows[i] * g.rows[g.n - 1 - i];
    if (g.n % 2 == 1) s = s - g.rows[g.n / 2] * g.rows[g.n / 2];
    out.pairing = s;
  }

  const auto& qlabels = g.plucker_labels.empty() ? g.labels : g.plucker_labels;
  auto Q = [&](std::size_t i, std::size_t j) -> const MultiPoly& {
    return qlabels[edge_index(g.n, i, j)];
  };
  for (std::size_t a = 0; a < g.n; ++a)
    for (std::size_t b = a + 1; b < g.n; ++b)
      for (std::size_t c = b + 1; c < g.n; ++c)
        for (std::size_t d = c + 1; d < g.n; ++d)
          out.quadrics.push_back(Q(a, b) * Q(c, d) + Q(a, d) * Q(b, c) - Q(a, c) * Q(b, d));

  out.all = out.triangles;
  out.all.insert(out.all.end(), out.triangles_twisted.begin(), out.triangles_twisted.end());
  if (out.pairing) out.all.push_back(*out.pairing);
  out.all.insert(out.all.end(), out.quadrics.begin(), out.quadrics.end());

  std::map<std::string, std::size_t> seen;
  for (const auto& e : out.all) {
    const std::string k = e.key(g.p);
    auto [it, fresh] = seen.emplace(k, 1);
    if (fresh) {
      out.distinct.push_back(e.canonical(g.p));
    } else {
      if (it->second == 1) out.duplicate_keys.push_back(k);
      ++it->second;
    }
  }
  return out;
}

poly::MultiPoly eliminate_v(const poly::MultiPoly& f) {
  const std::size_t vi = f.find_coord("v");
  if (vi == MultiPoly::npos) return f;
  const auto& cs = f.coords();
  MultiPoly repl = MultiPoly::variable(cs, index_of(cs, "w7")) -
                   MultiPoly::variable(cs, index_of(cs, "w2"));
  MultiPoly sub = f.substitute(vi, repl);
  std::vector<std::string> keep;
  for (const auto& name : cs)
    if (name != "v") keep.push_back(name);
  return sub.aligned_to(keep);
}

std::vector<poly::MultiPoly> to_model(const curves::CurveDesc& c,
                                      const std::vector<poly::MultiPoly>& affine_eqs) {
  std::vector<MultiPoly> out;
  out.reserve(affine_eqs.size());
  for (const auto& e0 : affine_eqs) {
    MultiPoly e = eliminate_v(e0);
    std::vector<std::string> with_t = e.coords();
    with_t.push_back("t");
    e = e.aligned_to(with_t).homogenize(with_t.size() - 1);
    out.push_back(e.aligned_to(c.coords).canonical(c.p));
  }
  return out;
}

}  // namespace dlc::grapheq
