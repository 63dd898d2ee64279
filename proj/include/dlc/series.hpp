#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlc/kernels.hpp"

namespace dlc::series {

// Truncated power series over GF(3), packed as two bit-planes and driven by
// the dispatched kernels.  The tail invariant (bits at positions >= length
// are zero) is maintained by every operation.
class Ser3 {
 public:
  Ser3() = default;
  explicit Ser3(std::size_t len);
  static Ser3 monomial(std::size_t len, std::size_t k, unsigned c = 1);

  std::size_t length() const { return len_; }
  std::size_t words() const { return lo_.size(); }
  const std::uint64_t* lo() const { return lo_.data(); }
  const std::uint64_t* hi() const { return hi_.data(); }

  unsigned get(std::size_t i) const;
  void set(std::size_t i, unsigned d);

  void add_in_place(const Ser3& o);             // this += o
  void axpy(const Ser3& o, unsigned coef);      // this += coef * o
  void shifted_axpy(const Ser3& o, std::size_t k, unsigned coef);
  void negate_in_place() { lo_.swap(hi_); }
  void scale_in_place(unsigned coef);

  Ser3 operator+(const Ser3& o) const;
  Ser3 operator-(const Ser3& o) const;
  // Truncated product (length = min of the lengths).
  Ser3 mul(const Ser3& o) const;
  // f(x) -> f(x^k) for k a power of 3; over GF(3) this is f^k.
  Ser3 frob_spread(std::uint32_t k) const;
  Ser3 truncated(std::size_t len) const;

  std::size_t first_nonzero(std::size_t from = 0) const;
  bool is_zero() const { return first_nonzero() == kern::npos; }
  bool operator==(const Ser3& o) const;
  std::size_t popcount() const;

  // Overwrite the planes from raw words (checkpoint deserialization); the
  // caller must supply words() entries per plane.
  void load_words(const std::uint64_t* lo, const std::uint64_t* hi);

 private:
  void mask_tail();
  std::size_t len_ = 0;
  std::vector<std::uint64_t> lo_, hi_;
};

// Truncated power series over GF(2) (single bit-plane).
class Ser2 {
 public:
  Ser2() = default;
  explicit Ser2(std::size_t len);
  static Ser2 monomial(std::size_t len, std::size_t k);

  std::size_t length() const { return len_; }
  unsigned get(std::size_t i) const;
  void set(std::size_t i, unsigned d);

  void add_in_place(const Ser2& o);
  void shifted_add(const Ser2& o, std::size_t k);
  Ser2 operator+(const Ser2& o) const;
  Ser2 mul(const Ser2& o) const;
  Ser2 frob_spread(std::uint32_t k) const;  // k a power of 2

  std::size_t first_nonzero(std::size_t from = 0) const;
  bool is_zero() const { return first_nonzero() == kern::npos; }
  bool operator==(const Ser2& o) const;

 private:
  void mask_tail();
  std::size_t len_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Coordinate expansions at the origin in the uniformizer x.  All coordinate
// functions of the three families have prime-field coefficients, so the
// series live over GF(3) / GF(2) regardless of the point field.

// Ree family, q = 3^(2m+1): the 13 projective coordinates (chain order
// x, y1, y2, w1..w10) plus the auxiliary v.
struct ReeSeries {
  std::uint32_t m = 1;
  std::size_t precision = 0;
  std::vector<std::string> names;  // x, y1, y2, w1..w10
  std::vector<Ser3> coord;
  Ser3 v;
};
ReeSeries ree_series(std::uint32_t m, std::size_t precision);

// Suzuki family, q = 2^(2m+1): coordinates x, y, z, w.
struct SuzukiSeries {
  std::uint32_t m = 1;
  std::size_t precision = 0;
  std::vector<std::string> names;
  std::vector<Ser2> coord;
};
SuzukiSeries suzuki_series(std::uint32_t m, std::size_t precision);

// Hermitian y-series for y^q0 + y = x^(q0+1); coefficients lie in the prime
// field, so the container depends on the characteristic of q0.
Ser3 hermitian_y_series_p3(std::uint32_t q0, std::size_t precision);  // 3, 9
Ser2 hermitian_y_series_p2(std::uint32_t q0, std::size_t precision);  // 2,4,8

}  // namespace dlc::series
