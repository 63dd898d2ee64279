// NEON variants of the GF(3)/GF(2) bit-plane kernels (aarch64 builds only).
#include "dlc/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

#include <utility>

namespace dlc::kern {
namespace {

inline void add_word(std::uint64_t& cl, std::uint64_t& ch, std::uint64_t bl,
                     std::uint64_t bh) {
  const std::uint64_t al = cl, ah = ch;
  const std::uint64_t na = ~(al | ah), nb = ~(bl | bh);
  cl = (al & nb) | (bl & na) | (ah & bh);
  ch = (ah & nb) | (bh & na) | (al & bl);
}

inline uint64x2_t vnotq_u64(uint64x2_t v) {
  return veorq_u64(v, vdupq_n_u64(~std::uint64_t(0)));
}

inline void add_vec(uint64x2_t al, uint64x2_t ah, uint64x2_t bl, uint64x2_t bh,
                    uint64x2_t& sl, uint64x2_t& sh) {
  const uint64x2_t na = vnotq_u64(vorrq_u64(al, ah));
  const uint64x2_t nb = vnotq_u64(vorrq_u64(bl, bh));
  sl = vorrq_u64(vorrq_u64(vandq_u64(al, nb), vandq_u64(bl, na)),
                 vandq_u64(ah, bh));
  sh = vorrq_u64(vorrq_u64(vandq_u64(ah, nb), vandq_u64(bh, na)),
                 vandq_u64(al, bl));
}

void add3(std::uint64_t* cl, std::uint64_t* ch, const std::uint64_t* al,
          const std::uint64_t* ah, const std::uint64_t* bl,
          const std::uint64_t* bh, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t sl, sh;
    add_vec(vld1q_u64(al + i), vld1q_u64(ah + i), vld1q_u64(bl + i),
            vld1q_u64(bh + i), sl, sh);
    vst1q_u64(cl + i, sl);
    vst1q_u64(ch + i, sh);
  }
  for (; i < n; ++i) {
    std::uint64_t l = al[i], h = ah[i];
    add_word(l, h, bl[i], bh[i]);
    cl[i] = l;
    ch[i] = h;
  }
}

void axpy3(std::uint64_t* cl, std::uint64_t* ch, const std::uint64_t* bl,
           const std::uint64_t* bh, unsigned coef, std::size_t n) {
  if (coef == 0) return;
  if (coef == 2) std::swap(bl, bh);
  add3(cl, ch, cl, ch, bl, bh, n);
}

void shift_axpy3(std::uint64_t* cl, std::uint64_t* ch, const std::uint64_t* bl,
                 const std::uint64_t* bh, std::size_t nb,
                 std::size_t shift_bits, unsigned coef, std::size_t nc) {
  if (coef == 0) return;
  if (coef == 2) std::swap(bl, bh);
  const std::size_t s = shift_bits / 64, r = shift_bits % 64;
  std::size_t j = s;
  if (r == 0) {
    for (; j < nc; ++j) {
      const std::size_t i = j - s;
      if (i >= nb) break;
      add_word(cl[j], ch[j], bl[i], bh[i]);
    }
    return;
  }
  if (j < nc) {
    const std::size_t i = j - s;
    std::uint64_t wl = (i < nb) ? bl[i] << r : 0;
    std::uint64_t wh = (i < nb) ? bh[i] << r : 0;
    add_word(cl[j], ch[j], wl, wh);
    ++j;
  }
  const int64x2_t rl = vdupq_n_s64((std::int64_t)r);
  const int64x2_t rr = vdupq_n_s64(-(std::int64_t)(64 - r));
  for (; j + 2 <= nc && j - s + 2 <= nb; j += 2) {
    const std::size_t i = j - s;
    const uint64x2_t wl = vorrq_u64(vshlq_u64(vld1q_u64(bl + i), rl),
                                    vshlq_u64(vld1q_u64(bl + i - 1), rr));
    const uint64x2_t wh = vorrq_u64(vshlq_u64(vld1q_u64(bh + i), rl),
                                    vshlq_u64(vld1q_u64(bh + i - 1), rr));
    uint64x2_t sl, sh;
    add_vec(vld1q_u64(cl + j), vld1q_u64(ch + j), wl, wh, sl, sh);
    vst1q_u64(cl + j, sl);
    vst1q_u64(ch + j, sh);
  }
  for (; j < nc; ++j) {
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

const Gf3Ops* gf3_neon() {
  static const Gf3Ops ops{"neon", add3, axpy3, shift_axpy3};
  return &ops;
}

const Gf2Ops* gf2_neon() {
  static const Gf2Ops ops{"neon", xor_shift2};
  return &ops;
}

}  // namespace dlc::kern
#endif  // aarch64
