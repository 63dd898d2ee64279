#include "dlc/series.hpp"

#include <bit>
#include <stdexcept>

namespace dlc::series {

namespace {
constexpr std::size_t word_count(std::size_t len) { return (len + 63) / 64; }
}  // namespace

// ----------------------------------------------------------------- Ser3 ---

Ser3::Ser3(std::size_t len)
    : len_(len), lo_(word_count(len), 0), hi_(word_count(len), 0) {}

Ser3 Ser3::monomial(std::size_t len, std::size_t k, unsigned c) {
  Ser3 s(len);
  if (k < len) s.set(k, c);
  return s;
}

unsigned Ser3::get(std::size_t i) const {
  const std::uint64_t bit = std::uint64_t(1) << (i % 64);
  if (lo_[i / 64] & bit) return 1;
  if (hi_[i / 64] & bit) return 2;
  return 0;
}

void Ser3::set(std::size_t i, unsigned d) {
  if (i >= len_) throw std::out_of_range("series index");
  const std::uint64_t bit = std::uint64_t(1) << (i % 64);
  lo_[i / 64] &= ~bit;
  hi_[i / 64] &= ~bit;
  if (d % 3 == 1) lo_[i / 64] |= bit;
  if (d % 3 == 2) hi_[i / 64] |= bit;
}

void Ser3::mask_tail() {
  if (len_ % 64) {
    const std::uint64_t mask = (std::uint64_t(1) << (len_ % 64)) - 1;
    lo_.back() &= mask;
    hi_.back() &= mask;
  }
}

void Ser3::load_words(const std::uint64_t* lo, const std::uint64_t* hi) {
  std::copy(lo, lo + lo_.size(), lo_.begin());
  std::copy(hi, hi + hi_.size(), hi_.begin());
  mask_tail();
}

void Ser3::add_in_place(const Ser3& o) {
  const std::size_t n = std::min(words(), o.words());
  kern::gf3().add(lo_.data(), hi_.data(), lo_.data(), hi_.data(), o.lo(),
                  o.hi(), n);
  mask_tail();
}

void Ser3::axpy(const Ser3& o, unsigned coef) {
  const std::size_t n = std::min(words(), o.words());
  kern::gf3().axpy(lo_.data(), hi_.data(), o.lo(), o.hi(), coef % 3, n);
  mask_tail();
}

void Ser3::shifted_axpy(const Ser3& o, std::size_t k, unsigned coef) {
  kern::gf3().shift_axpy(lo_.data(), hi_.data(), o.lo(), o.hi(), o.words(), k,
                         coef % 3, words());
  mask_tail();
}

void Ser3::scale_in_place(unsigned coef) {
  switch (coef % 3) {
    case 0:
      std::fill(lo_.begin(), lo_.end(), 0);
      std::fill(hi_.begin(), hi_.end(), 0);
      break;
    case 2:
      negate_in_place();
      break;
    default:
      break;
  }
}

Ser3 Ser3::operator+(const Ser3& o) const {
  Ser3 r = len_ <= o.len_ ? *this : o;
  r.axpy(len_ <= o.len_ ? o : *this, 1);
  return r;
}

Ser3 Ser3::operator-(const Ser3& o) const {
  if (len_ <= o.len_) {
    Ser3 r = *this;
    r.axpy(o, 2);
    return r;
  }
  Ser3 r = truncated(o.len_);
  r.axpy(o, 2);
  return r;
}

Ser3 Ser3::mul(const Ser3& o) const {
  const std::size_t out_len = std::min(len_, o.len_);
  Ser3 out(out_len);
  // iterate the sparser factor's nonzero coefficients
  const Ser3& a = popcount() <= o.popcount() ? *this : o;
  const Ser3& b = (&a == this) ? o : *this;
  const std::size_t limit = std::min(a.len_, out_len);
  for (std::size_t w = 0; w * 64 < limit; ++w) {
    std::uint64_t m = a.lo_[w] | a.hi_[w];
    while (m) {
      const unsigned bit = std::countr_zero(m);
      m &= m - 1;
      const std::size_t i = w * 64 + bit;
      if (i >= limit) break;
      out.shifted_axpy(b, i, a.get(i));
    }
  }
  return out;
}

Ser3 Ser3::frob_spread(std::uint32_t k) const {
  Ser3 out(len_);
  for (std::size_t w = 0; w < words(); ++w) {
    std::uint64_t m = lo_[w] | hi_[w];
    while (m) {
      const unsigned bit = std::countr_zero(m);
      m &= m - 1;
      const std::size_t i = w * 64 + bit;
      const std::size_t j = i * (std::size_t)k;
      if (j >= len_) return out;
      out.set(j, get(i));
    }
  }
  return out;
}

Ser3 Ser3::truncated(std::size_t len) const {
  Ser3 out(len);
  const std::size_t n = std::min(out.words(), words());
  std::copy(lo_.begin(), lo_.begin() + n, out.lo_.begin());
  std::copy(hi_.begin(), hi_.begin() + n, out.hi_.begin());
  out.mask_tail();
  return out;
}

std::size_t Ser3::first_nonzero(std::size_t from) const {
  return kern::gf3_scan(lo_.data(), hi_.data(), words(), from);
}

bool Ser3::operator==(const Ser3& o) const {
  return len_ == o.len_ && lo_ == o.lo_ && hi_ == o.hi_;
}

std::size_t Ser3::popcount() const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words(); ++w)
    c += std::popcount(lo_[w] | hi_[w]);
  return c;
}

// ----------------------------------------------------------------- Ser2 ---

Ser2::Ser2(std::size_t len) : len_(len), bits_(word_count(len), 0) {}

Ser2 Ser2::monomial(std::size_t len, std::size_t k) {
  Ser2 s(len);
  if (k < len) s.set(k, 1);
  return s;
}

unsigned Ser2::get(std::size_t i) const {
  return (bits_[i / 64] >> (i % 64)) & 1;
}

void Ser2::set(std::size_t i, unsigned d) {
  if (i >= len_) throw std::out_of_range("series index");
  const std::uint64_t bit = std::uint64_t(1) << (i % 64);
  if (d % 2)
    bits_[i / 64] |= bit;
  else
    bits_[i / 64] &= ~bit;
}

void Ser2::mask_tail() {
  if (len_ % 64) bits_.back() &= (std::uint64_t(1) << (len_ % 64)) - 1;
}

void Ser2::add_in_place(const Ser2& o) {
  const std::size_t n = std::min(bits_.size(), o.bits_.size());
  for (std::size_t i = 0; i < n; ++i) bits_[i] ^= o.bits_[i];
  mask_tail();
}

void Ser2::shifted_add(const Ser2& o, std::size_t k) {
  kern::gf2().xor_shift(bits_.data(), o.bits_.data(), o.bits_.size(), k,
                        bits_.size());
  mask_tail();
}

Ser2 Ser2::operator+(const Ser2& o) const {
  Ser2 r = len_ <= o.len_ ? *this : o;
  r.add_in_place(len_ <= o.len_ ? o : *this);
  return r;
}

Ser2 Ser2::mul(const Ser2& o) const {
  const std::size_t out_len = std::min(len_, o.len_);
  Ser2 out(out_len);
  for (std::size_t w = 0; w * 64 < std::min(len_, out_len); ++w) {
    std::uint64_t m = bits_[w];
    while (m) {
      const unsigned bit = std::countr_zero(m);
      m &= m - 1;
      const std::size_t i = w * 64 + bit;
      if (i >= out_len) break;
      out.shifted_add(o, i);
    }
  }
  return out;
}

Ser2 Ser2::frob_spread(std::uint32_t k) const {
  Ser2 out(len_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t m = bits_[w];
    while (m) {
      const unsigned bit = std::countr_zero(m);
      m &= m - 1;
      const std::size_t i = w * 64 + bit;
      const std::size_t j = i * (std::size_t)k;
      if (j >= len_) return out;
      out.set(j, 1);
    }
  }
  return out;
}

std::size_t Ser2::first_nonzero(std::size_t from) const {
  return kern::gf2_scan(bits_.data(), bits_.size(), from);
}

bool Ser2::operator==(const Ser2& o) const {
  return len_ == o.len_ && bits_ == o.bits_;
}

// ------------------------------------------------------- coordinate chains ---

ReeSeries ree_series(std::uint32_t m, std::size_t precision) {
  if (m < 1 || m > 3) throw std::invalid_argument("ree m out of range");
  std::uint64_t q0 = 1;
  for (std::uint32_t i = 0; i < m; ++i) q0 *= 3;
  const std::uint64_t q = 3 * q0 * q0;
  const std::size_t N = precision;

  ReeSeries out;
  out.m = m;
  out.precision = N;
  out.names = {"x",  "y1", "y2", "w1", "w2", "w3", "w4",
               "w5", "w6", "w7", "w8", "w9", "w10"};

  const Ser3 x = Ser3::monomial(N, 1);

  // y1 = x^(q0+1) - x^(q+q0) + y1^q, iterated to the fixed point
  Ser3 y1(N);
  {
    Ser3 base = Ser3::monomial(N, q0 + 1);
    base.shifted_axpy(Ser3::monomial(N, 0), (std::size_t)(q + q0), 2);
    for (int iter = 0;; ++iter) {
      Ser3 nxt = base + y1.frob_spread((std::uint32_t)q);
      if (nxt == y1) break;
      y1 = std::move(nxt);
      if (iter > 64) throw std::logic_error("y1 iteration diverged");
    }
  }
  // y2 = x^q0*y1 - x^q0*y1^q + y2^q
  Ser3 y2(N);
  {
    Ser3 base = y1 - y1.frob_spread((std::uint32_t)q);
    Ser3 shifted(N);
    shifted.shifted_axpy(base, (std::size_t)q0, 1);
    for (int iter = 0;; ++iter) {
      Ser3 nxt = shifted + y2.frob_spread((std::uint32_t)q);
      if (nxt == y2) break;
      y2 = std::move(nxt);
      if (iter > 64) throw std::logic_error("y2 iteration diverged");
    }
  }

  const std::uint32_t Q0 = (std::uint32_t)q0, T = 3 * Q0;
  auto sh = [&](const Ser3& s, std::size_t k) {
    Ser3 r(N);
    r.shifted_axpy(s, k, 1);
    return r;
  };

  const Ser3 y1t = y1.frob_spread(T), y2t = y2.frob_spread(T);
  Ser3 w1 = Ser3::monomial(N, 3 * (std::size_t)q0 + 1) - y1t;
  Ser3 w2 = sh(y1t, 1) - y2t;
  Ser3 w3 = sh(y2t, 1) - w1.frob_spread(T);
  const Ser3 w1q = w1.frob_spread(Q0), w2q = w2.frob_spread(Q0);
  Ser3 w4 = sh(w2q, 1) - y1.mul(w1q);
  Ser3 v = sh(w3.frob_spread(Q0), 1) - y2.mul(w1q);
  Ser3 w5 = y1.mul(w3.frob_spread(Q0)) - y2.mul(w2q);
  Ser3 w6 = v.frob_spread(T) - w2.frob_spread(T) + sh(w4.frob_spread(T), 1);
  Ser3 w7 = w2 + v;
  Ser3 w8 = w5.frob_spread(T) + sh(w7.frob_spread(T), 1);
  const Ser3 w6q = w6.frob_spread(Q0);
  Ser3 w9 = w4.mul(w2q) - y1.mul(w6q);
  Ser3 w10 = y2.mul(w6q) - w3.frob_spread(Q0).mul(w4);

  out.coord = {x,  y1, y2, std::move(w1), std::move(w2), std::move(w3),
               std::move(w4), std::move(w5), std::move(w6), std::move(w7),
               std::move(w8), std::move(w9), std::move(w10)};
  out.v = std::move(v);
  return out;
}

SuzukiSeries suzuki_series(std::uint32_t m, std::size_t precision) {
  if (m < 1 || m > 5) throw std::invalid_argument("suzuki m out of range");
  std::uint64_t q0 = 1;
  for (std::uint32_t i = 0; i < m; ++i) q0 *= 2;
  const std::uint64_t q = 2 * q0 * q0;
  const std::size_t N = precision;

  SuzukiSeries out;
  out.m = m;
  out.precision = N;
  out.names = {"x", "y", "z", "w"};

  const Ser2 x = Ser2::monomial(N, 1);
  // y = x^(q0+1) + x^(q+q0) + y^q
  Ser2 y(N);
  {
    Ser2 base = Ser2::monomial(N, q0 + 1);
    base.shifted_add(Ser2::monomial(N, 0), (std::size_t)(q + q0));
    for (int iter = 0;; ++iter) {
      Ser2 nxt = base + y.frob_spread((std::uint32_t)q);
      if (nxt == y) break;
      y = std::move(nxt);
      if (iter > 64) throw std::logic_error("suzuki y iteration diverged");
    }
  }
  const std::uint32_t T = 2 * (std::uint32_t)q0;
  // z = x^(2q0+1) + y^(2q0);  w = x*y^(2q0) + z^(2q0)
  Ser2 z = Ser2::monomial(N, 2 * (std::size_t)q0 + 1) + y.frob_spread(T);
  Ser2 w(N);
  w.shifted_add(y.frob_spread(T), 1);
  w.add_in_place(z.frob_spread(T));
  out.coord = {x, y, z, std::move(w)};
  return out;
}

Ser3 hermitian_y_series_p3(std::uint32_t q0, std::size_t precision) {
  if (q0 != 3 && q0 != 9) throw std::invalid_argument("q0 not a 3-power");
  Ser3 y(precision);
  const Ser3 base = Ser3::monomial(precision, q0 + 1);
  for (int iter = 0;; ++iter) {
    // y = x^(q0+1) - y^q0
    Ser3 t = y.frob_spread(q0);
    t.negate_in_place();
    Ser3 nxt = base + t;
    if (nxt == y) break;
    y = std::move(nxt);
    if (iter > 64) throw std::logic_error("hermitian iteration diverged");
  }
  return y;
}

Ser2 hermitian_y_series_p2(std::uint32_t q0, std::size_t precision) {
  if (q0 != 2 && q0 != 4 && q0 != 8)
    throw std::invalid_argument("q0 not a 2-power");
  Ser2 y(precision);
  const Ser2 base = Ser2::monomial(precision, q0 + 1);
  for (int iter = 0;; ++iter) {
    Ser2 nxt = base + y.frob_spread(q0);
    if (nxt == y) break;
    y = std::move(nxt);
    if (iter > 64) throw std::logic_error("hermitian iteration diverged");
  }
  return y;
}

}  // namespace dlc::series
