// AVX2 variants of the GF(3)/GF(2) bit-plane kernels.  Compiled with -mavx2
// on x86-64 only; dispatch.cpp checks CPU support before handing these out.
#include "dlc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

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

// (sl, sh) = (al,ah) + (bl,bh) digit-wise over four packed words.
inline void add_vec(__m256i al, __m256i ah, __m256i bl, __m256i bh,
                    __m256i& sl, __m256i& sh) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  const __m256i na = _mm256_xor_si256(_mm256_or_si256(al, ah), ones);
  const __m256i nb = _mm256_xor_si256(_mm256_or_si256(bl, bh), ones);
  sl = _mm256_or_si256(
      _mm256_or_si256(_mm256_and_si256(al, nb), _mm256_and_si256(bl, na)),
      _mm256_and_si256(ah, bh));
  sh = _mm256_or_si256(
      _mm256_or_si256(_mm256_and_si256(ah, nb), _mm256_and_si256(bh, na)),
      _mm256_and_si256(al, bl));
}

void add3(std::uint64_t* cl, std::uint64_t* ch, const std::uint64_t* al,
          const std::uint64_t* ah, const std::uint64_t* bl,
          const std::uint64_t* bh, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i sl, sh;
    add_vec(_mm256_loadu_si256((const __m256i*)(al + i)),
            _mm256_loadu_si256((const __m256i*)(ah + i)),
            _mm256_loadu_si256((const __m256i*)(bl + i)),
            _mm256_loadu_si256((const __m256i*)(bh + i)), sl, sh);
    _mm256_storeu_si256((__m256i*)(cl + i), sl);
    _mm256_storeu_si256((__m256i*)(ch + i), sh);
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
    for (; j + 4 <= nc && j - s + 4 <= nb; j += 4) {
      const std::size_t i = j - s;
      __m256i sl, sh;
      add_vec(_mm256_loadu_si256((const __m256i*)(cl + j)),
              _mm256_loadu_si256((const __m256i*)(ch + j)),
              _mm256_loadu_si256((const __m256i*)(bl + i)),
              _mm256_loadu_si256((const __m256i*)(bh + i)), sl, sh);
      _mm256_storeu_si256((__m256i*)(cl + j), sl);
      _mm256_storeu_si256((__m256i*)(ch + j), sh);
    }
    for (; j < nc; ++j) {
      const std::size_t i = j - s;
      if (i >= nb) break;
      add_word(cl[j], ch[j], bl[i], bh[i]);
    }
    return;
  }
  // First output word has no predecessor word; do it scalar.
  if (j < nc) {
    const std::size_t i = j - s;
    std::uint64_t wl = (i < nb) ? bl[i] << r : 0;
    std::uint64_t wh = (i < nb) ? bh[i] << r : 0;
    add_word(cl[j], ch[j], wl, wh);
    ++j;
  }
  const __m128i rl = _mm_cvtsi32_si128((int)r);
  const __m128i rr = _mm_cvtsi32_si128((int)(64 - r));
  for (; j + 4 <= nc && j - s + 4 <= nb; j += 4) {
    const std::size_t i = j - s;  // i >= 1 here
    const __m256i a_l = _mm256_loadu_si256((const __m256i*)(bl + i));
    const __m256i a_h = _mm256_loadu_si256((const __m256i*)(bh + i));
    const __m256i p_l = _mm256_loadu_si256((const __m256i*)(bl + i - 1));
    const __m256i p_h = _mm256_loadu_si256((const __m256i*)(bh + i - 1));
    const __m256i wl = _mm256_or_si256(_mm256_sll_epi64(a_l, rl),
                                       _mm256_srl_epi64(p_l, rr));
    const __m256i wh = _mm256_or_si256(_mm256_sll_epi64(a_h, rl),
                                       _mm256_srl_epi64(p_h, rr));
    __m256i sl, sh;
    add_vec(_mm256_loadu_si256((const __m256i*)(cl + j)),
            _mm256_loadu_si256((const __m256i*)(ch + j)), wl, wh, sl, sh);
    _mm256_storeu_si256((__m256i*)(cl + j), sl);
    _mm256_storeu_si256((__m256i*)(ch + j), sh);
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
  std::size_t j = s;
  if (r == 0) {
    for (; j + 4 <= nc && j - s + 4 <= nb; j += 4) {
      const std::size_t i = j - s;
      const __m256i v = _mm256_xor_si256(
          _mm256_loadu_si256((const __m256i*)(c + j)),
          _mm256_loadu_si256((const __m256i*)(b + i)));
      _mm256_storeu_si256((__m256i*)(c + j), v);
    }
    for (; j < nc; ++j) {
      const std::size_t i = j - s;
      if (i >= nb) break;
      c[j] ^= b[i];
    }
    return;
  }
  if (j < nc) {
    const std::size_t i = j - s;
    if (i < nb) c[j] ^= b[i] << r;
    ++j;
  }
  const __m128i rl = _mm_cvtsi32_si128((int)r);
  const __m128i rr = _mm_cvtsi32_si128((int)(64 - r));
  for (; j + 4 <= nc && j - s + 4 <= nb; j += 4) {
    const std::size_t i = j - s;
    const __m256i w = _mm256_or_si256(
        _mm256_sll_epi64(_mm256_loadu_si256((const __m256i*)(b + i)), rl),
        _mm256_srl_epi64(_mm256_loadu_si256((const __m256i*)(b + i - 1)), rr));
    _mm256_storeu_si256(
        (__m256i*)(c + j),
        _mm256_xor_si256(_mm256_loadu_si256((const __m256i*)(c + j)), w));
  }
  for (; j < nc; ++j) {
    const std::size_t i = j - s;
    std::uint64_t w = 0;
    if (i < nb) w = b[i] << r;
    if (i > nb) break;
    if (i >= 1 && i - 1 < nb) w |= b[i - 1] >> (64 - r);
    c[j] ^= w;
  }
}

}  // namespace

const Gf3Ops* gf3_avx2() {
  static const Gf3Ops ops{"avx2", add3, axpy3, shift_axpy3};
  return __builtin_cpu_supports("avx2") ? &ops : nullptr;
}

const Gf2Ops* gf2_avx2() {
  static const Gf2Ops ops{"avx2", xor_shift2};
  return __builtin_cpu_supports("avx2") ? &ops : nullptr;
}

}  // namespace dlc::kern
#endif  // x86-64
