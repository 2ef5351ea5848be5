#include "botsw/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace botsw::kernels {

namespace {

using Fn = double (*)(const double*, const double*, std::size_t);

struct Backend {
  std::string_view name;
  Fn dot;
  Fn sqdist;
};

constexpr Backend kScalar{"scalar", detail::dot_scalar, detail::sqdist_scalar};
#ifdef BOTSW_BUILD_AVX2
constexpr Backend kAvx2{"avx2", detail::dot_avx2, detail::sqdist_avx2};
#endif

const Backend* pick_default() {
#ifdef BOTSW_BUILD_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Backend*> g_backend{nullptr};

const Backend* backend() {
  const Backend* b = g_backend.load(std::memory_order_acquire);
  if (b) return b;
  b = pick_default();
  if (const char* env = std::getenv("BOTSW_KERNELS")) {
    if (std::string_view(env) == "scalar") b = &kScalar;
#ifdef BOTSW_BUILD_AVX2
    if (std::string_view(env) == "avx2" && __builtin_cpu_supports("avx2")) b = &kAvx2;
#endif
  }
  g_backend.store(b, std::memory_order_release);
  return b;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) { return backend()->dot(a, b, n); }

double sqdist(const double* a, const double* b, std::size_t n) {
  return backend()->sqdist(a, b, n);
}

std::string_view active_backend() { return backend()->name; }

bool set_backend(std::string_view name) {
  if (name == "scalar") {
    g_backend.store(&kScalar, std::memory_order_release);
    return true;
  }
#ifdef BOTSW_BUILD_AVX2
  if (name == "avx2" && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    g_backend.store(&kAvx2, std::memory_order_release);
    return true;
  }
#endif
  return false;
}

}  // namespace botsw::kernels
