#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlc/curves.hpp"
#include "dlc/multipoly.hpp"

namespace dlc::grapheq {

// Complete graph on a tuple of row functions, with polynomial edge labels.
// Every defining equation of the smooth models is produced mechanically from
// this data; nothing else is curve-specific.
struct LabeledGraph {
  std::uint32_t p = 0;
  std::uint64_t q0 = 0;      // row-power exponent
  std::uint64_t spread = 0;  // label-power exponent (p * q0)
  std::size_t n = 0;         // number of vertices
  std::vector<std::string> vars;         // ambient affine variables
  std::vector<poly::MultiPoly> rows;     // f_1..f_n attached to the vertices
  std::vector<poly::MultiPoly> labels;   // edge labels, lex order via edge_index
  // Labels used by the Pluecker quadric set when they differ from the
  // triangle edge labels (empty means: same as `labels`).  Needed when two
  // linearly dependent coordinates give the same edge two preferred names.
  std::vector<poly::MultiPoly> plucker_labels;
  bool with_label_twisted = false;       // triangle set with labels powered
  bool with_vertex_pairing = false;      // the single antipodal quadric
};

// Flat index of the edge {i, j}, i < j, in lexicographic order.
std::size_t edge_index(std::size_t n, std::size_t i, std::size_t j);

LabeledGraph ree_graph(const curves::CurveDesc& c);        // K7
LabeledGraph suzuki_graph(const curves::CurveDesc& c);     // K4
LabeledGraph hermitian_graph(const curves::CurveDesc& c);  // K3

struct Generated {
  // Triangle relations with rows powered: L_jk f_i^q0 - L_ik f_j^q0 + L_ij f_k^q0.
  std::vector<poly::MultiPoly> triangles;
  // Triangle relations with labels powered instead (exponent p*q0).
  std::vector<poly::MultiPoly> triangles_twisted;
  // Pluecker quadrics L_ab L_cd + L_ad L_bc - L_ac L_bd over 4-subsets.
  std::vector<poly::MultiPoly> quadrics;
  // Vertex-pairing quadric f_1 f_n + f_2 f_(n-1) + ... - f_mid^2.
  std::optional<poly::MultiPoly> pairing;

  std::vector<poly::MultiPoly> all;       // generation order
  std::vector<poly::MultiPoly> distinct;  // deduplicated by canonical key
  std::vector<std::string> duplicate_keys;
};

Generated generate(const LabeledGraph& g);

// Substitute the auxiliary v = w7 - w2 away and drop v from the coordinate
// list (identity for polynomials without a "v" coordinate).
poly::MultiPoly eliminate_v(const poly::MultiPoly& f);

// Affine equations -> homogeneous equations on the projective model, aligned
// with the curve's coordinate list ("t" first).
std::vector<poly::MultiPoly> to_model(const curves::CurveDesc& c,
                                      const std::vector<poly::MultiPoly>& affine_eqs);

}  // namespace dlc::grapheq
