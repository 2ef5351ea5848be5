#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the smoothing, quantization and
// classification stages. A scalar reference implementation always exists;
// an AVX2 variant is selected at startup when the CPU supports it.
// The two are equivalence-tested against each other.

namespace botsw::kernels {

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i (a[i]-b[i])^2
double sqdist(const double* a, const double* b, std::size_t n);

// Name of the active backend ("scalar" or "avx2").
std::string_view active_backend();

// Force a backend by name; returns false if unavailable. Used by the
// equivalence tests and the BOTSW_KERNELS environment variable.
bool set_backend(std::string_view name);

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
double sqdist_scalar(const double* a, const double* b, std::size_t n);
#ifdef BOTSW_BUILD_AVX2
double dot_avx2(const double* a, const double* b, std::size_t n);
double sqdist_avx2(const double* a, const double* b, std::size_t n);
#endif
}  // namespace detail

}  // namespace botsw::kernels
