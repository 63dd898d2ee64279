#include "dlc/curves.hpp"

#include <array>
#include <stdexcept>

namespace dlc::curves {

namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("point count exceeds 128-bit range");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("point count exceeds 128-bit range");
  return r;
}

i128 ipow(i128 base, std::uint32_t e) {
  i128 r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
  std::string s;
  while (u) {
    s.push_back(char('0' + (int)(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

// Element u + v*sqrt(3) of Z[sqrt(3)].
struct Rad3 {
  i128 u = 0, v = 0;
};

Rad3 mul(const Rad3& a, const Rad3& b) {
  return {checked_add(checked_mul(a.u, b.u), checked_mul(3, checked_mul(a.v, b.v))),
          checked_add(checked_mul(a.u, b.v), checked_mul(a.v, b.u))};
}

// q^(r/2) in Z[sqrt(3)] for q an odd power of 3.
Rad3 q_half_power(std::uint32_t m, std::uint32_t r) {
  const std::uint32_t e = (2 * m + 1) * r;  // q^(r/2) = 3^(e/2)
  if (e % 2 == 0) return {ipow(3, e / 2), 0};
  return {0, ipow(3, (e - 1) / 2)};
}

// a and b from the Ree zeta factorization (qt^2+3q0t+1)^a (qt^2+1)^b.
void ree_ab(const CurveDesc& c, i128& a, i128& b) {
  const i128 q0 = c.q0, q = c.q;
  a = checked_mul(q0, q * q - 1);
  b = checked_mul(q0, (q - 1) * (q + 3 * q0 + 1)) / 2;
}

// Reciprocal-root sums for the Ree curve: S1_r = 2 q^(r/2) cos(5 pi r / 6),
// S2_r = 2 q^(r/2) cos(pi r / 2), both exact (the sqrt(3) parts cancel).
i128 ree_s1(const CurveDesc& c, std::uint32_t r) {
  // 2 cos(5 pi r / 6) over one period, as u + v*sqrt(3).
  static constexpr std::array<std::array<int, 2>, 12> two_cos = {{{2, 0},
                                                                  {0, -1},
                                                                  {1, 0},
                                                                  {0, 0},
                                                                  {-1, 0},
                                                                  {0, 1},
                                                                  {-2, 0},
                                                                  {0, 1},
                                                                  {-1, 0},
                                                                  {0, 0},
                                                                  {1, 0},
                                                                  {0, -1}}};
  const auto& t = two_cos[r % 12];
  const Rad3 s = mul(q_half_power(c.m, r), Rad3{t[0], t[1]});
  if (s.v != 0) throw std::logic_error("ree S1 not a rational integer");
  return s.u;
}

i128 ree_s2(const CurveDesc& c, std::uint32_t r) {
  static constexpr std::array<int, 4> two_cos = {2, 0, -2, 0};
  const Rad3 s = mul(q_half_power(c.m, r), Rad3{two_cos[r % 4], 0});
  if (s.v != 0) throw std::logic_error("ree S2 not a rational integer");
  return s.u;
}

// Re((-1+i)^r) doubled, for the Suzuki reciprocal roots.
i128 suzuki_s(std::uint32_t r) {
  i128 re = 1, im = 0;
  for (std::uint32_t i = 0; i < r; ++i) {
    const i128 nre = -re - im, nim = re - im;  // multiply by (-1 + i)
    re = nre;
    im = nim;
  }
  return 2 * re;
}

i128 count_core(const CurveDesc& c, std::uint32_t r) {
  if (r < 1 || r > 24) throw std::invalid_argument("extension degree r must be in [1,24]");
  const i128 qr = ipow((i128)c.q, r);
  switch (c.family) {
    case Family::ree: {
      i128 a, b;
      ree_ab(c, a, b);
      return checked_add(qr + 1, -checked_add(checked_mul(a, ree_s1(c, r)), checked_mul(b, ree_s2(c, r))));
    }
    case Family::suzuki: {
      const i128 g = c.genus;
      return checked_add(qr + 1, -checked_mul(g, checked_mul(ipow((i128)c.q0, r), suzuki_s(r))));
    }
    case Family::hermitian: {
      i128 root = 1;  // (-q0)^r
      for (std::uint32_t i = 0; i < r; ++i) root = checked_mul(root, -(i128)c.q0);
      return checked_add(qr + 1, -checked_mul(2 * (i128)c.genus, root));
    }
  }
  throw std::logic_error("unknown family");
}

i128 count_recurrence_core(const CurveDesc& c, std::uint32_t r) {
  if (r < 1 || r > 24) throw std::invalid_argument("extension degree r must be in [1,24]");
  const i128 qr = ipow((i128)c.q, r);
  switch (c.family) {
    case Family::ree: {
      // S1: roots of x^2 + 3 q0 x + q;  S2: roots of x^2 + q.
      i128 s1p = 2, s1 = -3 * (i128)c.q0;
      i128 s2p = 2, s2 = 0;
      for (std::uint32_t i = 2; i <= r; ++i) {
        const i128 n1 = checked_add(checked_mul(-3 * (i128)c.q0, s1), checked_mul(-(i128)c.q, s1p));
        const i128 n2 = checked_mul(-(i128)c.q, s2p);
        s1p = s1;
        s1 = n1;
        s2p = s2;
        s2 = n2;
      }
      i128 a, b;
      ree_ab(c, a, b);
      return checked_add(qr + 1, -checked_add(checked_mul(a, s1), checked_mul(b, s2)));
    }
    case Family::suzuki: {
      i128 sp = 2, s = -2;
      for (std::uint32_t i = 2; i <= r; ++i) {
        const i128 n = -2 * checked_add(s, sp);
        sp = s;
        s = n;
      }
      return checked_add(qr + 1, -checked_mul((i128)c.genus, checked_mul(ipow((i128)c.q0, r), s)));
    }
    case Family::hermitian: {
      i128 h = 1;
      for (std::uint32_t i = 1; i <= r; ++i) h = checked_mul(h, -(i128)c.q0);
      return checked_add(qr + 1, -checked_mul(2 * (i128)c.genus, h));
    }
  }
  throw std::logic_error("unknown family");
}

std::uint64_t to_u64_count(i128 n) {
  if (n < 0 || n > (i128)UINT64_MAX) throw std::overflow_error("point count exceeds uint64 range");
  return (std::uint64_t)n;
}

std::uint64_t upow64(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::hermitian: return "hermitian";
    case Family::suzuki: return "suzuki";
    case Family::ree: return "ree";
  }
  return "?";
}

CurveDesc hermitian_curve(std::uint32_t q0) {
  CurveDesc c;
  c.family = Family::hermitian;
  std::uint32_t p = 0, deg = 0;
  for (std::uint32_t base : {2u, 3u}) {
    std::uint64_t v = 1;
    for (std::uint32_t e = 1; e <= 4; ++e) {
      v *= base;
      if (v == q0) p = base, deg = e;
    }
  }
  if (p == 0 || !(q0 == 2 || q0 == 3 || q0 == 4 || q0 == 8 || q0 == 9))
    throw std::invalid_argument("hermitian base parameter must be one of 2,3,4,8,9");
  c.p = p;
  c.m = deg;
  c.q0 = q0;
  c.q = (std::uint64_t)q0 * q0;
  c.base_degree = 2 * deg;
  c.genus = (std::uint64_t)q0 * (q0 - 1) / 2;
  c.coords = {"t", "x", "y"};
  c.pole_orders = {0, c.q0, c.q0 + 1};
  c.nu0 = {0, 1, c.q0 + 1};
  c.partner = {2, 1, 0};  // t <-> y, x fixed
  return c;
}

CurveDesc suzuki_curve(std::uint32_t m) {
  if (m < 1 || m > 5) throw std::invalid_argument("suzuki parameter m must be in [1,5]");
  CurveDesc c;
  c.family = Family::suzuki;
  c.p = 2;
  c.m = m;
  c.q0 = upow64(2, m);
  c.q = upow64(2, 2 * m + 1);
  c.base_degree = 2 * m + 1;
  c.genus = c.q0 * (c.q - 1);
  c.coords = {"t", "x", "y", "z", "w"};
  c.pole_orders = {0, c.q, c.q + c.q0, c.q + 2 * c.q0, c.q + 2 * c.q0 + 1};
  c.nu0 = {0, 1, c.q0 + 1, 2 * c.q0 + 1, c.q + 2 * c.q0 + 1};
  c.partner = {4, 3, 2, 1, 0};  // t <-> w, x <-> z, y fixed
  return c;
}

CurveDesc ree_curve(std::uint32_t m) {
  if (m < 1 || m > 4) throw std::invalid_argument("ree parameter m must be in [1,4]");
  CurveDesc c;
  c.family = Family::ree;
  c.p = 3;
  c.m = m;
  c.q0 = upow64(3, m);
  c.q = upow64(3, 2 * m + 1);
  c.base_degree = 2 * m + 1;
  const std::uint64_t q0 = c.q0, q = c.q;
  c.genus = 3 * q0 * (q - 1) * (q + q0 + 1) / 2;
  c.coords = {"t", "x", "y1", "y2", "w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9", "w10"};
  const std::uint64_t q2 = q * q;
  c.pole_orders = {0,
                   q2,
                   q2 + q0 * q,
                   q2 + 2 * q0 * q,
                   q2 + 3 * q0 * q,
                   q2 + (3 * q0 + 1) * q,
                   q2 + (3 * q0 + 2) * q,
                   q2 + (2 * q0 + 1) * q,
                   q2 + (3 * q0 + 1) * q + q0,
                   q2 + (3 * q0 + 2) * q + 3 * q0,
                   q2 + (2 * q0 + 1) * q + q0,
                   q2 + (3 * q0 + 2) * q + 3 * q0 + 1,
                   q2 + (3 * q0 + 2) * q + q0,
                   q2 + (3 * q0 + 2) * q + 2 * q0};
  // t<->w8, x<->w6, y1<->w10, y2<->w9, w1<->w3, w4<->w5; w2, w7 fixed.
  c.partner = {11, 9, 13, 12, 6, 5, 4, 8, 7, 1, 10, 0, 3, 2};
  const std::uint64_t m_inf = c.pole_orders[11];
  c.nu0.resize(14);
  for (std::size_t i = 0; i < 14; ++i) c.nu0[i] = m_inf - c.pole_orders[c.partner[i]];
  return c;
}

std::uint64_t point_count(const CurveDesc& c, std::uint32_t r) { return to_u64_count(count_core(c, r)); }

std::uint64_t point_count_recurrence(const CurveDesc& c, std::uint32_t r) {
  return to_u64_count(count_recurrence_core(c, r));
}

std::string point_count_str(const CurveDesc& c, std::uint32_t r) { return i128_to_string(count_core(c, r)); }

bool is_maximal(const CurveDesc& c, std::uint32_t r) {
  // sqrt(q^r) must be an integer for the Weil bound to be attainable; when q
  // itself is a square (the Hermitian case) that holds for every r.
  i128 root;
  if (r % 2 == 0) {
    root = ipow((i128)c.q, r / 2);
  } else if (c.family == Family::hermitian) {
    root = ipow((i128)c.q0, r);
  } else {
    return false;
  }
  const i128 n = count_core(c, r);
  const i128 bound =
      checked_add(ipow((i128)c.q, r) + 1, checked_mul(2 * (i128)c.genus, root));
  return n == bound;
}

std::uint32_t ree_v(const CurveDesc& c, const gf::Field& F, std::uint32_t x, std::uint32_t y1,
                    std::uint32_t y2) {
  const std::uint64_t q0 = c.q0;
  const std::uint32_t w1 = F.sub(F.pow(x, 3 * q0 + 1), F.pow(y1, 3 * q0));
  const std::uint32_t w3 = F.sub(F.mul(x, F.pow(y2, 3 * q0)), F.pow(w1, 3 * q0));
  return F.sub(F.mul(x, F.pow(w3, q0)), F.mul(y2, F.pow(w1, q0)));
}

std::vector<std::uint32_t> ree_point(const CurveDesc& c, const gf::Field& F, std::uint32_t x,
                                     std::uint32_t y1, std::uint32_t y2) {
  const std::uint64_t q0 = c.q0;
  const std::uint32_t one = F.from_int(1);
  const std::uint32_t w1 = F.sub(F.pow(x, 3 * q0 + 1), F.pow(y1, 3 * q0));
  const std::uint32_t w2 = F.sub(F.mul(x, F.pow(y1, 3 * q0)), F.pow(y2, 3 * q0));
  const std::uint32_t w3 = F.sub(F.mul(x, F.pow(y2, 3 * q0)), F.pow(w1, 3 * q0));
  const std::uint32_t w4 = F.sub(F.mul(x, F.pow(w2, q0)), F.mul(y1, F.pow(w1, q0)));
  const std::uint32_t v = F.sub(F.mul(x, F.pow(w3, q0)), F.mul(y2, F.pow(w1, q0)));
  const std::uint32_t w5 = F.sub(F.mul(y1, F.pow(w3, q0)), F.mul(y2, F.pow(w2, q0)));
  const std::uint32_t w6 =
      F.add(F.sub(F.pow(v, 3 * q0), F.pow(w2, 3 * q0)), F.mul(x, F.pow(w4, 3 * q0)));
  const std::uint32_t w7 = F.add(w2, v);
  const std::uint32_t w8 = F.add(F.pow(w5, 3 * q0), F.mul(x, F.pow(w7, 3 * q0)));
  const std::uint32_t w9 = F.sub(F.mul(w4, F.pow(w2, q0)), F.mul(y1, F.pow(w6, q0)));
  const std::uint32_t w10 = F.sub(F.mul(y2, F.pow(w6, q0)), F.mul(F.pow(w3, q0), w4));
  return {one, x, y1, y2, w1, w2, w3, w4, w5, w6, w7, w8, w9, w10};
}

std::vector<std::uint32_t> suzuki_point(const CurveDesc& c, const gf::Field& F, std::uint32_t x,
                                        std::uint32_t y) {
  const std::uint64_t q0 = c.q0;
  const std::uint32_t z = F.sub(F.pow(x, 2 * q0 + 1), F.pow(y, 2 * q0));
  const std::uint32_t w = F.sub(F.mul(x, F.pow(y, 2 * q0)), F.pow(z, 2 * q0));
  return {F.from_int(1), x, y, z, w};
}

std::vector<std::uint32_t> hermitian_point(const CurveDesc& c, const gf::Field& F, std::uint32_t x,
                                           std::uint32_t y) {
  (void)c;
  return {F.from_int(1), x, y};
}

std::vector<std::uint32_t> infinity_point(const CurveDesc& c) {
  std::size_t top = 0;
  for (std::size_t i = 1; i < c.pole_orders.size(); ++i)
    if (c.pole_orders[i] > c.pole_orders[top]) top = i;
  std::vector<std::uint32_t> pt(c.coords.size(), 0);
  pt[top] = 1;  // the unit element in any of the packed-field encodings
  return pt;
}

}  // namespace dlc::curves
