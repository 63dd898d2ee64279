#include "dlc/field.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace dlc::gf {
namespace {

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is a small prime; Fermat.
  std::uint32_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

using Poly = std::vector<std::uint32_t>;  // coefficient i belongs to x^i

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  trim(c);
  return c;
}

Poly pmod(Poly a, const Poly& f, std::uint32_t p) {
  // f monic
  const std::size_t n = f.size() - 1;
  while (a.size() > n) {
    const std::uint32_t c = a.back();
    const std::size_t off = a.size() - 1 - n;
    if (c) {
      for (std::size_t i = 0; i < n; ++i)
        a[off + i] = (a[off + i] + (p - f[i] % p) * c) % p;
    }
    a.pop_back();
    trim(a);
    if (a.size() <= n) break;
  }
  trim(a);
  return a;
}

Poly pgcd(Poly a, Poly b, std::uint32_t p) {
  while (!b.empty()) {
    // reduce a mod b (make b monic on the fly)
    const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = c * lead_inv % p;
    a = pmod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

Poly pmodpow(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = pmod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, p), f, p);
    base = pmod(pmul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

bool is_irreducible(const Poly& f, std::uint32_t p, std::uint32_t n) {
  if (n == 1) return true;
  // x^(p^n) == x mod f, and gcd(x^(p^(n/l)) - x, f) == 1 for prime l | n.
  std::vector<std::uint32_t> prime_divs;
  {
    std::uint32_t m = n;
    for (std::uint32_t d = 2; d * d <= m; ++d)
      while (m % d == 0) {
        if (prime_divs.empty() || prime_divs.back() != d)
          prime_divs.push_back(d);
        m /= d;
      }
    if (m > 1) prime_divs.push_back(m);
  }
  Poly h{0, 1};  // x
  for (std::uint32_t j = 1; j <= n; ++j) {
    h = pmodpow(std::move(h), p, f, p);
    for (std::uint32_t l : prime_divs) {
      if (j == n / l) {
        Poly d = h;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;  // h - x
        trim(d);
        Poly g = pgcd(f, d, p);
        if (g.size() != 1) return false;
      }
    }
  }
  // after n Frobenius steps h must equal x
  Poly d = h;
  if (d.size() < 2) d.resize(2, 0);
  d[1] = (d[1] + p - 1) % p;
  trim(d);
  return d.empty();
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    while (m % d == 0) {
      if (out.empty() || out.back() != d) out.push_back(d);
      m /= d;
    }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

std::string FieldDesc::to_string() const {
  std::string s = "GF(" + std::to_string(p);
  if (n > 1) s += "^" + std::to_string(n);
  s += "), modulus";
  bool first = true;
  for (std::uint32_t i = n + 1; i-- > 0;) {
    const std::uint32_t c = modulus[i];
    if (!c) continue;
    s += first ? " " : " + ";
    first = false;
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) {
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

Field::Field(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {
  if (p < 2 || n < 1 || n > 40) throw std::invalid_argument("bad field shape");
  q_ = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q_ *= p;
    if (q_ > 0xFFFFFFFFull)
      throw std::overflow_error("field too big for packed encoding");
  }
  ppow_.resize(n + 1);
  ppow_[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i)
    ppow_[i] = (std::uint32_t)((std::uint64_t)ppow_[i - 1] * p);

  // lexicographically least monic irreducible modulus
  Poly f;
  for (std::uint64_t m = 0;; ++m) {
    f.assign(n + 1, 0);
    std::uint64_t t = m;
    for (std::uint32_t i = 0; i < n; ++i) {
      f[i] = t % p;
      t /= p;
    }
    if (t) throw std::runtime_error("no irreducible modulus found");
    f[n] = 1;
    if (is_irreducible(f, p, n)) break;
  }
  desc_.p = p;
  desc_.n = n;
  desc_.modulus = f;

  // reduction rows x^(n+i) mod f for generic products
  if (n > 1) {
    red_.resize(n - 1);
    Poly t(n, 0);  // x^n mod f = -(c0..c_{n-1})
    for (std::uint32_t i = 0; i < n; ++i) t[i] = (p - f[i] % p) % p;
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
      std::uint32_t packed = 0;
      for (std::uint32_t d = 0; d < n; ++d) packed += t[d] * ppow_[d];
      red_[i] = packed;
      // t *= x mod f
      Poly nt(n, 0);
      for (std::uint32_t d = 0; d + 1 < n; ++d) nt[d + 1] = t[d];
      const std::uint32_t top = t[n - 1];
      if (top) {
        for (std::uint32_t d = 0; d < n; ++d)
          nt[d] = (nt[d] + top * ((p - f[d] % p) % p)) % p;
      }
      t = nt;
    }
  }

  tabled_ = q_ <= (1u << 20);
  if (tabled_) {
    const std::uint32_t q = (std::uint32_t)q_;
    neg_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      std::uint32_t r = 0;
      for (std::uint32_t i = 0; i < n; ++i)
        r += ((p - digit(a, i)) % p) * ppow_[i];
      neg_[a] = r;
    }
    // primitive element
    const auto fac = prime_factors(q_ - 1);
    for (std::uint32_t g = 1; g < q; ++g) {
      bool prim = q_ == 2;
      if (!prim) {
        prim = true;
        for (std::uint64_t l : fac) {
          // g^((q-1)/l) via plain poly powering
          std::uint32_t r = 1, b = g;
          for (std::uint64_t e = (q_ - 1) / l; e; e >>= 1) {
            if (e & 1) r = poly_mul(r, b);
            b = poly_mul(b, b);
          }
          if (r == 1) {
            prim = false;
            break;
          }
        }
      }
      if (prim) {
        gen_ = g;
        break;
      }
    }
    exp_.resize(q_ - 1);
    log_.assign(q, 0);
    std::uint32_t cur = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      log_[cur] = (std::uint32_t)i;
      cur = poly_mul(cur, gen_);
    }
    if (cur != 1) throw std::logic_error("generator order mismatch");
    if (p != 2 && q <= 1024) {
      add_tab_.resize((std::size_t)q * q);
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
          std::uint32_t r = 0;
          for (std::uint32_t i = 0; i < n; ++i)
            r += ((digit(a, i) + digit(b, i)) % p) * ppow_[i];
          add_tab_[(std::size_t)a * q + b] = r;
        }
    }
  }
}

Field::~Field() = default;

std::uint32_t Field::digit(std::uint32_t a, std::uint32_t i) const {
  return (a / ppow_[i]) % p_;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (!add_tab_.empty()) return add_tab_[(std::size_t)a * q_ + b];
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_; ++i)
    r += ((digit(a, i) + digit(b, i)) % p_) * ppow_[i];
  return r;
}

std::uint32_t Field::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  if (!neg_.empty()) return neg_[a];
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_; ++i)
    r += ((p_ - digit(a, i)) % p_) * ppow_[i];
  return r;
}

std::uint32_t Field::poly_mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (n_ == 1) return (std::uint32_t)((std::uint64_t)a * b % p_);
  // digit convolution then reduce with the precomputed rows
  std::uint64_t conv[79] = {0};
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint32_t da = digit(a, i);
    if (!da) continue;
    for (std::uint32_t j = 0; j < n_; ++j)
      conv[i + j] += (std::uint64_t)da * digit(b, j);
  }
  std::uint32_t digits[79];
  for (std::uint32_t i = 0; i < n_; ++i) digits[i] = conv[i] % p_;
  for (std::uint32_t i = 0; i + 1 < n_; ++i) {
    const std::uint32_t c = conv[n_ + i] % p_;
    if (!c) continue;
    std::uint32_t row = red_[i];
    for (std::uint32_t d = 0; d < n_; ++d) {
      digits[d] = (digits[d] + c * ((row) % p_)) % p_;
      row /= p_;
    }
  }
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_; ++i) r += digits[i] * ppow_[i];
  return r;
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  if (tabled_) {
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = (std::uint64_t)log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  return poly_mul(a, b);
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (tabled_) {
    const std::uint64_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
  }
  return pow(a, q_ - 2);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  if (tabled_) {
    const std::uint64_t l = (std::uint64_t)log_[a] * (e % (q_ - 1)) % (q_ - 1);
    return exp_[l];
  }
  std::uint32_t r = 1, b = a;
  while (e) {
    if (e & 1) r = poly_mul(r, b);
    b = poly_mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint32_t Field::frob(std::uint32_t a, std::uint32_t k) const {
  k %= n_;
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < k; ++i) e *= p_;
  return pow(a, e);
}

std::uint32_t Field::generator() const {
  if (!tabled_) throw std::logic_error("generator needs a tabled field");
  return gen_;
}

std::uint32_t Field::trace(std::uint32_t a) const {
  std::uint32_t s = 0, cur = a;
  for (std::uint32_t i = 0; i < n_; ++i) {
    s = add(s, cur);
    cur = pow(cur, p_);
  }
  if (s >= p_) throw std::logic_error("trace left the prime field");
  return s;
}

const Field& Field::get(std::uint32_t p, std::uint32_t n) {
  static std::map<std::uint64_t, std::unique_ptr<Field>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const std::uint64_t key = (std::uint64_t)p << 32 | n;
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<Field>(new Field(p, n))).first;
  return *it->second;
}

// ---------------------------------------------------------------------------

ASSolver::ASSolver(const Field& f, std::uint32_t k)
    : f_(f), n_(f.degree()), p_(f.p()) {
  // Digit matrix of y -> y^(p^k) - y, augmented with the identity so that any
  // right-hand side can be transformed by the same row operations.
  std::vector<std::vector<std::uint32_t>> m(n_,
                                            std::vector<std::uint32_t>(2 * n_, 0));
  for (std::uint32_t cidx = 0; cidx < n_; ++cidx) {
    const std::uint32_t basis = f.ppow_[cidx];
    const std::uint32_t img = f.sub(f.frob(basis, k), basis);
    for (std::uint32_t r = 0; r < n_; ++r) m[r][cidx] = f.digit(img, r);
    // identity part
  }
  for (std::uint32_t r = 0; r < n_; ++r) m[r][n_ + r] = 1;

  // row-reduce
  pivot_col_.assign(n_, -1);
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < n_ && rank < n_; ++col) {
    std::uint32_t sel = rank;
    while (sel < n_ && m[sel][col] == 0) ++sel;
    if (sel == n_) continue;
    std::swap(m[rank], m[sel]);
    const std::uint32_t piv_inv = inv_mod_p(m[rank][col], p_);
    for (auto& x : m[rank]) x = x * piv_inv % p_;
    for (std::uint32_t r = 0; r < n_; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const std::uint32_t c = m[r][col];
      for (std::uint32_t j = 0; j < 2 * n_; ++j)
        m[r][j] = (m[r][j] + (p_ - c) * m[rank][j]) % p_;
    }
    pivot_col_[rank] = (int)col;
    ++rank;
  }
  rows_ = std::move(m);
  pivot_col_.resize(n_, -1);

  // kernel basis from free columns
  std::vector<bool> is_pivot(n_, false);
  for (std::uint32_t r = 0; r < n_; ++r)
    if (pivot_col_[r] >= 0) is_pivot[pivot_col_[r]] = true;
  for (std::uint32_t col = 0; col < n_; ++col) {
    if (is_pivot[col]) continue;
    std::vector<std::uint32_t> d(n_, 0);
    d[col] = 1;
    for (std::uint32_t r = 0; r < n_; ++r) {
      if (pivot_col_[r] < 0) continue;
      d[pivot_col_[r]] = (p_ - rows_[r][col] % p_) % p_;
    }
    std::uint32_t packed = 0;
    for (std::uint32_t i = 0; i < n_; ++i) packed += d[i] * f.ppow_[i];
    kernel_.push_back(packed);
  }
}

std::size_t ASSolver::kernel_size() const {
  std::size_t s = 1;
  for (std::size_t i = 0; i < kernel_.size(); ++i) s *= p_;
  return s;
}

std::vector<std::uint32_t> ASSolver::solve(std::uint32_t c) const {
  // transform the rhs with the stored row operations
  std::vector<std::uint32_t> rhs(n_);
  for (std::uint32_t i = 0; i < n_; ++i) rhs[i] = f_.digit(c, i);
  std::vector<std::uint32_t> t(n_, 0);
  for (std::uint32_t r = 0; r < n_; ++r) {
    std::uint64_t acc = 0;
    for (std::uint32_t j = 0; j < n_; ++j)
      acc += (std::uint64_t)rows_[r][n_ + j] * rhs[j];
    t[r] = acc % p_;
  }
  for (std::uint32_t r = 0; r < n_; ++r)
    if (pivot_col_[r] < 0 && t[r] != 0) return {};  // inconsistent

  std::vector<std::uint32_t> part(n_, 0);
  for (std::uint32_t r = 0; r < n_; ++r)
    if (pivot_col_[r] >= 0) part[pivot_col_[r]] = t[r];
  std::uint32_t base = 0;
  for (std::uint32_t i = 0; i < n_; ++i) base += part[i] * f_.ppow_[i];

  std::vector<std::uint32_t> out;
  const std::size_t combos = kernel_size();
  out.reserve(combos);
  for (std::size_t mask = 0; mask < combos; ++mask) {
    std::uint32_t y = base;
    std::size_t m = mask;
    for (std::size_t i = 0; i < kernel_.size(); ++i) {
      const std::uint32_t coef = (std::uint32_t)(m % p_);
      m /= p_;
      if (coef) {
        std::uint32_t scaled = kernel_[i];
        for (std::uint32_t rep = 1; rep < coef; ++rep)
          scaled = f_.add(scaled, kernel_[i]);
        y = f_.add(y, scaled);
      }
    }
    out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

Embedding::Embedding(const Field& from, const Field& to)
    : from_(from), to_(to) {
  if (from.p() != to.p() || to.degree() % from.degree() != 0)
    throw std::invalid_argument("not a subfield pair");
  if (!to.tabled()) throw std::invalid_argument("embedding target too large");
  // least root of the small modulus in the big field
  std::uint32_t root = 0;
  bool found = false;
  for (std::uint64_t z = 0; z < to.q(); ++z) {
    std::uint32_t acc = 0;
    for (std::uint32_t i = from.degree() + 1; i-- > 0;) {
      acc = to.mul(acc, (std::uint32_t)z);
      acc = to.add(acc, to.from_int(from.desc().modulus[i]));
    }
    if (acc == 0) {
      root = (std::uint32_t)z;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("modulus has no root in extension");
  root_pow_.resize(from.degree());
  for (std::uint32_t i = 0; i < from.degree(); ++i)
    root_pow_[i] = to.pow(root, i);
}

std::uint32_t Embedding::operator()(std::uint32_t a) const {
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < from_.degree(); ++i) {
    const std::uint32_t d = from_.digit(a, i);
    if (d) r = to_.add(r, to_.mul(to_.from_int(d), root_pow_[i]));
  }
  return r;
}

}  // namespace dlc::gf
