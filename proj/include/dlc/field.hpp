#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dlc::gf {

struct FieldDesc {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::vector<std::uint32_t> modulus;  // c0..cn of the monic defining polynomial
  std::string to_string() const;
};

// GF(p^n).  Elements are uint32_t indices in [0, p^n); the base-p digits of an
// index are the coefficients of its residue polynomial, so 0 and 1 mean what
// they say and the digit-basis vector x^i has index p^i.
//
// The defining modulus is always the lexicographically least monic
// irreducible of degree n (the non-leading coefficients scanned as an
// ascending base-p integer), which pins element encodings across runs and
// machines.  Fields up to 2^20 elements carry exp/log tables; larger ones use
// direct polynomial arithmetic (only needed for wide extension sampling).
class Field {
 public:
  static const Field& get(std::uint32_t p, std::uint32_t n);

  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return n_; }
  std::uint64_t q() const { return q_; }
  const FieldDesc& desc() const { return desc_; }
  bool tabled() const { return tabled_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg(b));
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // a^(p^k), the k-fold Frobenius.
  std::uint32_t frob(std::uint32_t a, std::uint32_t k) const;
  // The constant c mod p.
  std::uint32_t from_int(std::uint64_t c) const { return c % p_; }
  // A fixed primitive element (tabled fields only).
  std::uint32_t generator() const;
  // Absolute trace to GF(p), as an integer in [0, p).
  std::uint32_t trace(std::uint32_t a) const;

  ~Field();
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  friend class ASSolver;
  friend class Embedding;
  explicit Field(std::uint32_t p, std::uint32_t n);

  std::uint32_t digit(std::uint32_t a, std::uint32_t i) const;
  std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_, n_;
  std::uint64_t q_;
  bool tabled_ = false;
  FieldDesc desc_;
  std::vector<std::uint32_t> ppow_;      // p^i for digit access
  std::vector<std::uint32_t> exp_, log_; // tabled fields
  std::vector<std::uint32_t> neg_;       // tabled fields
  std::vector<std::uint32_t> add_tab_;   // only for small q (and p > 2)
  std::vector<std::uint32_t> red_;       // x^(n+i) mod f, generic reduction
  std::uint32_t gen_ = 0;
};

// Precomputed solver for the Artin-Schreier equation y^(p^k) - y = c over a
// fixed field: the left side is a GF(p)-linear map, so each right-hand side
// costs one back-substitution.  The solution set is empty or a coset of the
// kernel (|S| = p^dim ker).
class ASSolver {
 public:
  ASSolver(const Field& f, std::uint32_t k);
  // All solutions, sorted ascending; empty when unsolvable.
  std::vector<std::uint32_t> solve(std::uint32_t c) const;
  std::size_t kernel_size() const;

 private:
  const Field& f_;
  std::uint32_t n_, p_;
  // Row-echelon data for the n x n digit matrix of the map.
  std::vector<std::vector<std::uint32_t>> rows_;  // reduced rows (augmentable)
  std::vector<int> pivot_col_;
  std::vector<std::uint32_t> kernel_;  // kernel basis elements (as indices)
};

// Subfield embedding GF(p^a) -> GF(p^b), a | b.  The digit-basis root of the
// small modulus is sent to its least root in the big field, so the embedding
// is deterministic.
class Embedding {
 public:
  Embedding(const Field& from, const Field& to);
  std::uint32_t operator()(std::uint32_t a) const;
  const Field& from() const { return from_; }
  const Field& to() const { return to_; }

 private:
  const Field& from_;
  const Field& to_;
  std::vector<std::uint32_t> root_pow_;
};

}  // namespace dlc::gf
