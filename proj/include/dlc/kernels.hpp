#pragma once

#include <cstddef>
#include <cstdint>

namespace dlc::kern {

// Packed GF(3) vectors as two bit-planes: digit 1 sets the lo bit, digit 2
// sets the hi bit, digit 0 sets neither.  Negation is a plane swap and costs
// nothing; addition is pure bitwise logic.  These inner loops carry the heavy
// series arithmetic, so they exist in a scalar reference version and in
// vectorized variants selected at runtime.
struct Gf3Ops {
  const char* name;

  // c = a + b over n words.  c may alias a.
  void (*add)(std::uint64_t* cl, std::uint64_t* ch,
              const std::uint64_t* al, const std::uint64_t* ah,
              const std::uint64_t* bl, const std::uint64_t* bh, std::size_t n);

  // c += coef * b over n words, coef in {0,1,2}.  c must not alias b.
  void (*axpy)(std::uint64_t* cl, std::uint64_t* ch,
               const std::uint64_t* bl, const std::uint64_t* bh,
               unsigned coef, std::size_t n);

  // c += coef * (b << shift_bits).  b holds nb words, c holds nc; bits
  // shifted past the end of c are dropped (truncated series product).
  void (*shift_axpy)(std::uint64_t* cl, std::uint64_t* ch,
                     const std::uint64_t* bl, const std::uint64_t* bh,
                     std::size_t nb, std::size_t shift_bits, unsigned coef,
                     std::size_t nc);
};

// Plain GF(2) bit vectors (Suzuki-side series work).
struct Gf2Ops {
  const char* name;
  // c ^= b << shift_bits, same truncation contract as above.
  void (*xor_shift)(std::uint64_t* c, const std::uint64_t* b, std::size_t nb,
                    std::size_t shift_bits, std::size_t nc);
};

inline constexpr std::size_t npos = ~std::size_t(0);

const Gf3Ops& gf3_scalar();
const Gf2Ops& gf2_scalar();
const Gf3Ops* gf3_avx2();  // null when unsupported by the CPU or the build
const Gf2Ops* gf2_avx2();
const Gf3Ops* gf3_neon();
const Gf2Ops* gf2_neon();

// Runtime-selected backend.  Setting DLC_FORCE_SCALAR=1 pins the reference
// implementation (used by the equivalence tests and for debugging).
const Gf3Ops& gf3();
const Gf2Ops& gf2();
const char* backend_name();

// Index of the first nonzero GF(3) digit at position >= from, or npos.
std::size_t gf3_scan(const std::uint64_t* lo, const std::uint64_t* hi,
                     std::size_t nwords, std::size_t from);

// Index of the first set bit at position >= from, or npos.
std::size_t gf2_scan(const std::uint64_t* bits, std::size_t nwords,
                     std::size_t from);

}  // namespace dlc::kern
