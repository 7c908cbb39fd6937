#pragma once

// Dense float vector kernels behind runtime lane dispatch.
//
// The scalar lane is the reference; the AVX2 lane is selected at startup when
// the CPU supports avx2+fma (override with GRAPH_SQUASH_SIMD=scalar|avx2|auto).
// Reductions accumulate in double in every lane, so lanes agree to a few ulps
// and cosine values downstream are stable to ~1e-13.

#include <cstddef>
#include <span>
#include <string_view>

namespace gsq::vec {

enum class Lane { Scalar, Avx2 };

Lane active_lane();
std::string_view lane_name(Lane lane);

double dot(std::span<const float> x, std::span<const float> y);
double squared_norm(std::span<const float> x);
void axpy(float a, std::span<const float> x, std::span<float> y);  // y += a*x
void scale(std::span<float> x, float a);

namespace detail {

struct Kernels {
  double (*dot)(const float*, const float*, std::size_t);
  double (*squared_norm)(const float*, std::size_t);
  void (*axpy)(float, const float*, float*, std::size_t);
  void (*scale)(float*, float, std::size_t);
};

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when not compiled in or CPU lacks it
const Kernels& active_kernels();

// Defined in the AVX2 translation unit only.
const Kernels* avx2_kernels_runtime();

}  // namespace detail

// Scalar reference path, exposed for lane-equivalence tests.
namespace ref {
double dot(std::span<const float> x, std::span<const float> y);
double squared_norm(std::span<const float> x);
void axpy(float a, std::span<const float> x, std::span<float> y);
void scale(std::span<float> x, float a);
}  // namespace ref

}  // namespace gsq::vec
