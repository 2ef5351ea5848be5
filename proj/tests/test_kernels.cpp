#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "botsw/kernels.hpp"
#include "doctest.h"

using namespace botsw;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 4.0 - 2.0;
  return v;
}

double dot_naive(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sqdist_naive(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar backend matches naive loops") {
  const std::string saved(kernels::active_backend());
  REQUIRE(kernels::set_backend("scalar"));
  std::mt19937_64 rng(7);
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{4},
                        std::size_t{7}, std::size_t{8}, std::size_t{15}, std::size_t{64},
                        std::size_t{257}}) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    CHECK(kernels::dot(a.data(), b.data(), n) ==
          doctest::Approx(dot_naive(a.data(), b.data(), n)).epsilon(1e-12));
    CHECK(kernels::sqdist(a.data(), b.data(), n) ==
          doctest::Approx(sqdist_naive(a.data(), b.data(), n)).epsilon(1e-12));
  }
  kernels::set_backend(saved);
}

TEST_CASE("simd backend equals scalar backend") {
  const std::string saved(kernels::active_backend());
  if (!kernels::set_backend("avx2")) return;  // no AVX2 on this machine
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng() % 300;
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    REQUIRE(kernels::set_backend("scalar"));
    const double ds = kernels::dot(a.data(), b.data(), n);
    const double ss = kernels::sqdist(a.data(), b.data(), n);
    REQUIRE(kernels::set_backend("avx2"));
    const double dv = kernels::dot(a.data(), b.data(), n);
    const double sv = kernels::sqdist(a.data(), b.data(), n);
    CHECK(dv == doctest::Approx(ds).epsilon(1e-12));
    CHECK(sv == doctest::Approx(ss).epsilon(1e-12));
  }
  kernels::set_backend(saved);
}

TEST_CASE("unknown backend is rejected") {
  CHECK_FALSE(kernels::set_backend("sse9"));
  CHECK((kernels::active_backend() == "scalar" || kernels::active_backend() == "avx2"));
}

TEST_CASE("sqdist is zero on identical inputs") {
  std::mt19937_64 rng(3);
  const auto a = random_vec(rng, 31);
  CHECK(kernels::sqdist(a.data(), a.data(), a.size()) == 0.0);
}

}
