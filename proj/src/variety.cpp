#include "dlc/variety.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dlc::variety {

using curves::CurveDesc;
using curves::Family;
using gf::ASSolver;
using gf::Field;
using poly::MultiPoly;

namespace {

constexpr std::uint64_t kTableLimit = 1u << 20;

const Field& extension_field(const CurveDesc& c, std::uint32_t r, bool need_tables) {
  if (r == 0) throw std::invalid_argument("extension degree must be positive");
  const std::uint64_t bits = static_cast<std::uint64_t>(c.base_degree) * r;
  if (bits > 63) throw std::invalid_argument("extension field too large");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < bits; ++i) {
    q *= c.p;
    if (need_tables && q > kTableLimit)
      throw std::invalid_argument("enumeration needs a tabled field (q^r <= 2^20)");
  }
  return Field::get(c.p, static_cast<std::uint32_t>(bits));
}

// alpha with alpha^(q0-1) = -1, used to rewrite y^q0 + y = c as a standard
// Artin-Schreier equation z^q0 - z = -c/alpha with y = alpha*z.  In odd
// characteristic alpha is found as s^((Q-1)/(2(q0-1))) for a non-square s;
// in characteristic 2 the equation is already in standard form.
std::uint32_t hermitian_alpha(const Field& F, std::uint64_t q0) {
  if (F.p() == 2) return 1;
  const std::uint64_t Q = F.q();
  const std::uint64_t e = (Q - 1) / (2 * (q0 - 1));
  const std::uint32_t minus1 = F.neg(1);
  for (std::uint32_t s = 2; s < 64; ++s) {
    const std::uint32_t a = F.pow(s, e);
    if (F.pow(a, q0 - 1) == minus1) return a;
  }
  throw std::logic_error("no alpha with alpha^(q0-1) = -1 found");
}

std::vector<std::uint32_t> chain_point(const CurveDesc& c, const Field& F,
                                       const std::vector<std::uint32_t>& gens) {
  switch (c.family) {
    case Family::ree:
      return curves::ree_point(c, F, gens[0], gens[1], gens[2]);
    case Family::suzuki:
      return curves::suzuki_point(c, F, gens[0], gens[1]);
    case Family::hermitian:
      return curves::hermitian_point(c, F, gens[0], gens[1]);
  }
  throw std::logic_error("unknown family");
}

// Fiber generator sets over a fixed x, one vector of generator tuples per
// call.  Shared by exhaustive enumeration and seeded sampling.
struct FiberSolver {
  FiberSolver(const CurveDesc& c, const Field& F)
      : c_(c), F_(F), as_(F, c.family == Family::hermitian
                                ? c.base_degree / 2
                                : c.base_degree) {
    if (c.family == Family::hermitian)
      alpha_inv_ = F.inv(hermitian_alpha(F, c.q0));
  }

  // All generator tuples (x, y, ...) over the given x, ascending.
  std::vector<std::vector<std::uint32_t>> fibers(std::uint32_t x) const {
    std::vector<std::vector<std::uint32_t>> out;
    const std::uint32_t m = c_.m;
    switch (c_.family) {
      case Family::ree: {
        // y1^q - y1 = x^q0 (x^q - x), y2^q - y2 = x^q0 (y1^q - y1).
        const std::uint32_t xq0 = F_.frob(x, m);
        const std::uint32_t c1 = F_.mul(xq0, F_.sub(F_.frob(x, 2 * m + 1), x));
        const std::uint32_t c2 = F_.mul(xq0, c1);
        const auto y1s = as_.solve(c1);
        const auto y2s = as_.solve(c2);
        for (auto y1 : y1s)
          for (auto y2 : y2s) out.push_back({x, y1, y2});
        break;
      }
      case Family::suzuki: {
        const std::uint32_t cc = F_.mul(F_.frob(x, m), F_.sub(F_.frob(x, 2 * m + 1), x));
        for (auto y : as_.solve(cc)) out.push_back({x, y});
        break;
      }
      case Family::hermitian: {
        // y^q0 + y = x^(q0+1): scale to z^q0 - z = -x^(q0+1)/alpha.
        const std::uint32_t rhs = F_.mul(F_.frob(x, c_.base_degree / 2), x);
        std::vector<std::uint32_t> ys;
        if (F_.p() == 2) {
          ys = as_.solve(rhs);
        } else {
          const std::uint32_t alpha = F_.inv(alpha_inv_);
          for (auto z : as_.solve(F_.neg(F_.mul(rhs, alpha_inv_))))
            ys.push_back(F_.mul(alpha, z));
          std::sort(ys.begin(), ys.end());
        }
        for (auto y : ys) out.push_back({x, y});
        break;
      }
    }
    return out;
  }

  const CurveDesc& c_;
  const Field& F_;
  ASSolver as_;
  std::uint32_t alpha_inv_ = 1;
};

}  // namespace

PointSet enumerate_points(const CurveDesc& c, std::uint32_t r) {
  const Field& F = extension_field(c, r, /*need_tables=*/true);
  FiberSolver fs(c, F);
  PointSet ps;
  ps.field = &F;
  for (std::uint64_t x = 0; x < F.q(); ++x)
    for (const auto& g : fs.fibers(static_cast<std::uint32_t>(x)))
      ps.points.push_back(chain_point(c, F, g));
  ps.points.push_back(curves::infinity_point(c));
  return ps;
}

std::vector<std::uint32_t> hermitian_fiber(const Field& F, std::uint32_t q0_deg,
                                           std::uint32_t c) {
  ASSolver as(F, q0_deg);
  if (F.p() == 2) return as.solve(c);
  std::uint64_t q0 = 1;
  for (std::uint32_t i = 0; i < q0_deg; ++i) q0 *= F.p();
  const std::uint32_t alpha = hermitian_alpha(F, q0);
  std::vector<std::uint32_t> ys;
  for (auto z : as.solve(F.neg(F.mul(c, F.inv(alpha))))) ys.push_back(F.mul(alpha, z));
  std::sort(ys.begin(), ys.end());
  return ys;
}

bool on_variety(const std::vector<MultiPoly>& model, const Field& F,
                const std::vector<std::uint32_t>& pt) {
  for (const auto& eq : model)
    if (eq.eval(F, pt) != 0) return false;
  return true;
}

JacobianEvaluator::JacobianEvaluator(const std::vector<MultiPoly>& model) {
  rows_.reserve(model.size());
  for (const auto& eq : model) {
    nvars_ = eq.coords().size();
    std::vector<std::pair<std::size_t, MultiPoly>> row;
    for (std::size_t v = 0; v < nvars_; ++v) {
      MultiPoly d = eq.derivative(v);
      if (!d.terms().empty()) row.emplace_back(v, std::move(d));
    }
    rows_.push_back(std::move(row));
  }
}

std::size_t JacobianEvaluator::rank_at(const Field& F,
                                       const std::vector<std::uint32_t>& pt) const {
  std::vector<std::vector<std::uint32_t>> mat;
  mat.reserve(rows_.size());
  for (const auto& row : rows_) {
    std::vector<std::uint32_t> r(nvars_, 0);
    bool nonzero = false;
    for (const auto& [v, d] : row) {
      r[v] = d.eval(F, pt);
      nonzero = nonzero || r[v] != 0;
    }
    if (nonzero) mat.push_back(std::move(r));
  }
  return matrix_rank(F, std::move(mat));
}

std::size_t matrix_rank(const Field& F, std::vector<std::vector<std::uint32_t>> rows) {
  std::size_t rank = 0;
  const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const std::uint32_t inv = F.inv(rows[rank][col]);
    for (std::size_t j = col; j < ncols; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const std::uint32_t f = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

PointSet sample_extension_points(const CurveDesc& c, std::uint32_t r,
                                 std::size_t count, std::uint64_t seed) {
  const Field& F = extension_field(c, r, /*need_tables=*/false);
  if (!F.tabled() && c.family == Family::hermitian && F.p() != 2)
    throw std::invalid_argument("hermitian sampling past the table limit is unsupported");
  FiberSolver fs(c, F);
  PointSet ps;
  ps.field = &F;
  std::mt19937_64 rng(seed);
  while (ps.points.size() < count) {
    const std::uint32_t x = static_cast<std::uint32_t>(rng() % F.q());
    const auto fib = fs.fibers(x);
    if (fib.empty()) continue;
    // One point per solvable x keeps the sample spread across fibers.
    ps.points.push_back(chain_point(c, F, fib[rng() % fib.size()]));
  }
  return ps;
}

}  // namespace dlc::variety
