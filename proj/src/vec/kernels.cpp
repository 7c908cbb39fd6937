#include "graphsquash/vec/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

namespace gsq::vec {

namespace {

double dot_scalar(const float* x, const float* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(x[i]) * static_cast<double>(y[i]);
  }
  return acc;
}

double squared_norm_scalar(const float* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(x[i]) * static_cast<double>(x[i]);
  }
  return acc;
}

void axpy_scalar(float a, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(float* x, float a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace

namespace detail {

const Kernels& scalar_kernels() {
  static const Kernels k{dot_scalar, squared_norm_scalar, axpy_scalar, scale_scalar};
  return k;
}

const Kernels* avx2_kernels() {
#if defined(GSQ_HAVE_AVX2_TU)
  return avx2_kernels_runtime();
#else
  return nullptr;
#endif
}

const Kernels& active_kernels() {
  static const Kernels* picked = [] {
    const char* env = std::getenv("GRAPH_SQUASH_SIMD");
    std::string mode = env ? env : "auto";
    if (mode == "scalar") return &scalar_kernels();
    const Kernels* simd = avx2_kernels();
    // "avx2" without hardware support falls back to scalar.
    return simd ? simd : &scalar_kernels();
  }();
  return *picked;
}

}  // namespace detail

Lane active_lane() {
  return &detail::active_kernels() == &detail::scalar_kernels() ? Lane::Scalar : Lane::Avx2;
}

std::string_view lane_name(Lane lane) {
  return lane == Lane::Scalar ? "scalar" : "avx2";
}

double dot(std::span<const float> x, std::span<const float> y) {
  assert(x.size() == y.size());
  return detail::active_kernels().dot(x.data(), y.data(), x.size());
}

double squared_norm(std::span<const float> x) {
  return detail::active_kernels().squared_norm(x.data(), x.size());
}

void axpy(float a, std::span<const float> x, std::span<float> y) {
  assert(x.size() == y.size());
  detail::active_kernels().axpy(a, x.data(), y.data(), x.size());
}

void scale(std::span<float> x, float a) {
  detail::active_kernels().scale(x.data(), a, x.size());
}

namespace ref {

double dot(std::span<const float> x, std::span<const float> y) {
  assert(x.size() == y.size());
  return dot_scalar(x.data(), y.data(), x.size());
}

double squared_norm(std::span<const float> x) {
  return squared_norm_scalar(x.data(), x.size());
}

void axpy(float a, std::span<const float> x, std::span<float> y) {
  assert(x.size() == y.size());
  axpy_scalar(a, x.data(), y.data(), x.size());
}

void scale(std::span<float> x, float a) {
  scale_scalar(x.data(), a, x.size());
}

}  // namespace ref

}  // namespace gsq::vec
