#include "dlc/kernels.hpp"

#include <bit>
#include <utility>

namespace dlc::kern {
namespace {

// One-word GF(3) digit-wise add.  With na = "a is zero", nb = "b is zero":
// sum is 1 where exactly one side is 1, or both sides are 2 (2+2=1);
// sum is 2 where exactly one side is 2, or both sides are 1.
inline void add_word(std::uint64_t& cl, std::uint64_t& ch, std::uint64_t bl,
                     std::uint64_t bh) {
  const std::uint64_t al = cl, ah = ch;
  const std::uint64_t na = ~(al | ah), nb = ~(bl | bh);
  cl = (al & nb) | (bl & na) | (ah & bh);
  ch = (ah & nb) | (bh & na) | (al & bl);
}

void add3(std::uint64_t* cl, std::uint64_t* ch, const std::uint64_t* al,
          const std::uint64_t* ah, const std::uint64_t* bl,
          const std::uint64_t* bh, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t l = al[i], h = ah[i];
    const std::uint64_t nb = ~(bl[i] | bh[i]), na = ~(l | h);
    cl[i] = (l & nb) | (bl[i] & na) | (h & bh[i]);
    ch[i] = (h & nb) | (bh[i] & na) | (l & bl[i]);
  }
}

void axpy3(std::uint64_t* cl, std::uint64_t* ch, const std::uint64_t* bl,
           const std::uint64_t* bh, unsigned coef, std::size_t n) {
  if (coef == 0) return;
  if (coef == 2) std::swap(bl, bh);  // 2*b negates: planes swap
  for (std::size_t i = 0; i < n; ++i) add_word(cl[i], ch[i], bl[i], bh[i]);
}

void shift_axpy3(std::uint64_t* cl, std::uint64_t* ch, const std::uint64_t* bl,
                 const std::uint64_t* bh, std::size_t nb,
                 std::size_t shift_bits, unsigned coef, std::size_t nc) {
  if (coef == 0) return;
  if (coef == 2) std::swap(bl, bh);
  const std::size_t s = shift_bits / 64, r = shift_bits % 64;
  if (r == 0) {
    for (std::size_t j = s; j < nc; ++j) {
      const std::size_t i = j - s;
      if (i >= nb) break;
      add_word(cl[j], ch[j], bl[i], bh[i]);
    }
    return;
  }
  for (std::size_t j = s; j < nc; ++j) {
    const std::size_t i = j - s;
    std::uint64_t wl = 0, wh = 0;
    if (i < nb) {
      wl = bl[i] << r;
      wh = bh[i] << r;
    } else if (i > nb) {
      break;
    }
    if (i >= 1 && i - 1 < nb) {
      wl |= bl[i - 1] >> (64 - r);
      wh |= bh[i - 1] >> (64 - r);
    }
    add_word(cl[j], ch[j], wl, wh);
  }
}

void xor_shift2(std::uint64_t* c, const std::uint64_t* b, std::size_t nb,
                std::size_t shift_bits, std::size_t nc) {
  const std::size_t s = shift_bits / 64, r = shift_bits % 64;
  for (std::size_t j = s; j < nc; ++j) {
    const std::size_t i = j - s;
    std::uint64_t w = 0;
    if (i < nb) w = r ? (b[i] << r) : b[i];
    if (r && i >= 1 && i - 1 < nb) w |= b[i - 1] >> (64 - r);
    if (i > nb) break;
    c[j] ^= w;
  }
}

}  // namespace

const Gf3Ops& gf3_scalar() {
  static const Gf3Ops ops{"scalar", add3, axpy3, shift_axpy3};
  return ops;
}

const Gf2Ops& gf2_scalar() {
  static const Gf2Ops ops{"scalar", xor_shift2};
  return ops;
}

std::size_t gf3_scan(const std::uint64_t* lo, const std::uint64_t* hi,
                     std::size_t nwords, std::size_t from) {
  std::size_t w = from / 64;
  if (w >= nwords) return npos;
  std::uint64_t m = (lo[w] | hi[w]) & (~std::uint64_t(0) << (from % 64));
  while (true) {
    if (m) return w * 64 + std::countr_zero(m);
    if (++w >= nwords) return npos;
    m = lo[w] | hi[w];
  }
}

std::size_t gf2_scan(const std::uint64_t* bits, std::size_t nwords,
                     std::size_t from) {
  std::size_t w = from / 64;
  if (w >= nwords) return npos;
  std::uint64_t m = bits[w] & (~std::uint64_t(0) << (from % 64));
  while (true) {
    if (m) return w * 64 + std::countr_zero(m);
    if (++w >= nwords) return npos;
    m = bits[w];
  }
}

}  // namespace dlc::kern
