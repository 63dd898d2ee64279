#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlc/field.hpp"

namespace dlc::poly {

// A single term.  The exponent vector is aligned with the owning
// polynomial's coordinate list; the coefficient is an integer reduced mod p
// on canonicalization.
struct Term {
  std::vector<std::uint16_t> exp;
  std::int64_t coef = 0;
};

// Sparse exact multivariate polynomial with named coordinates.  The
// coordinate list is part of the value: arithmetic requires identical lists,
// and aligned_to() re-indexes a polynomial onto a different list by name.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> coords)
      : coords_(std::move(coords)) {}

  static MultiPoly constant(std::vector<std::string> coords, std::int64_t c);
  static MultiPoly variable(std::vector<std::string> coords, std::size_t var,
                            std::uint16_t e = 1, std::int64_t c = 1);

  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t total_degree() const;
  std::size_t find_coord(const std::string& name) const;  // npos when absent

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(std::int64_t c) const;
  MultiPoly pow(std::uint32_t e) const;

  // Raise every exponent by the factor k with coefficients untouched; this is
  // the p-power twist f -> f^k and is only valid when k is a power of the
  // coefficient characteristic (c^k = c then holds termwise).
  MultiPoly twist(std::uint32_t k) const;

  MultiPoly derivative(std::size_t var) const;
  MultiPoly substitute(std::size_t var, const MultiPoly& replacement) const;
  // Pad every term to the maximal total degree using the given coordinate.
  MultiPoly homogenize(std::size_t tvar) const;
  // Re-index onto a different coordinate list; any dropped coordinate must be
  // unused by the terms.
  MultiPoly aligned_to(std::vector<std::string> new_coords) const;

  // Canonical representative mod p: coefficients in [1, p-1], duplicate
  // exponent vectors merged, terms sorted graded-lex descending, and the
  // whole polynomial scaled so the leading coefficient is 1 (i.e. canonical
  // up to a nonzero scalar).
  MultiPoly canonical(std::uint32_t p) const;
  // Stable text key of canonical(p), used for exact set matching.
  std::string key(std::uint32_t p) const;

  std::uint32_t eval(const gf::Field& f,
                     const std::vector<std::uint32_t>& point) const;

  std::string to_string() const;
  std::string to_json() const;
  static MultiPoly from_json(const std::string& text);

  // Raw term append; call normalize() (or canonical()) afterwards.
  void add_term(std::vector<std::uint16_t> exp, std::int64_t coef);
  // Merge duplicates and drop integer-zero terms without mod-p reduction.
  void normalize();

  inline static constexpr std::size_t npos = ~std::size_t(0);

 private:
  std::vector<std::string> coords_;
  std::vector<Term> terms_;
};

}  // namespace dlc::poly
