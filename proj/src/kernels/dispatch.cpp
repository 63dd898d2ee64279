#include <cstdlib>

#include "dlc/kernels.hpp"

namespace dlc::kern {

#if !(defined(__x86_64__) || defined(_M_X64))
const Gf3Ops* gf3_avx2() { return nullptr; }
const Gf2Ops* gf2_avx2() { return nullptr; }
#endif
#if !defined(__aarch64__)
const Gf3Ops* gf3_neon() { return nullptr; }
const Gf2Ops* gf2_neon() { return nullptr; }
#endif

namespace {
bool force_scalar() {
  const char* v = std::getenv("DLC_FORCE_SCALAR");
  return v && v[0] == '1';
}
}  // namespace

const Gf3Ops& gf3() {
  static const Gf3Ops* chosen = [] {
    if (force_scalar()) return &gf3_scalar();
    if (const Gf3Ops* k = gf3_avx2()) return k;
    if (const Gf3Ops* k = gf3_neon()) return k;
    return &gf3_scalar();
  }();
  return *chosen;
}

const Gf2Ops& gf2() {
  static const Gf2Ops* chosen = [] {
    if (force_scalar()) return &gf2_scalar();
    if (const Gf2Ops* k = gf2_avx2()) return k;
    if (const Gf2Ops* k = gf2_neon()) return k;
    return &gf2_scalar();
  }();
  return *chosen;
}

const char* backend_name() { return gf3().name; }

}  // namespace dlc::kern
