#include "hozon/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hozon::kernels {

namespace {

const Ops* g_override = nullptr;
bool g_forced_scalar = false;

const Ops& pick_default() {
  static const Ops* chosen = [] {
    if (const char* env = std::getenv("HOZON_KERNEL")) {
      const std::string v(env);
      if (v == "scalar") return &scalar_ops();
      if (v == "avx2") {
        if (const Ops* a = avx2_ops()) return a;
        throw std::runtime_error("HOZON_KERNEL=avx2 but AVX2 is unavailable");
      }
    }
    if (const Ops* a = avx2_ops()) return a;
    return &scalar_ops();
  }();
  return *chosen;
}

}  // namespace

const Ops& active() {
  if (g_forced_scalar) return scalar_ops();
  if (g_override) return *g_override;
  return pick_default();
}

void set_override(const std::string& name) {
  if (name == "auto") {
    g_override = nullptr;
    g_forced_scalar = false;
    return;
  }
  if (name == "scalar") {
    g_forced_scalar = true;
    g_override = nullptr;
    return;
  }
  if (name == "avx2") {
    const Ops* a = avx2_ops();
    if (!a) throw std::runtime_error("kernel variant avx2 unavailable on this CPU");
    g_forced_scalar = false;
    g_override = a;
    return;
  }
  throw std::invalid_argument("unknown kernel variant: " + name);
}

}  // namespace hozon::kernels
