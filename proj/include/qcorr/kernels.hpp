#pragma once

// Batched closed-form evaluation of the Bell-diagonal measures.
//
// One scalar reference kernel and one AVX2 kernel compute the same
// expressions; the active variant is picked once at startup from the CPU
// features and can be pinned with QCORR_KERNEL=scalar|avx2 or set_isa().

#include <optional>
#include <span>
#include <string_view>

#include "qcorr/measure_kind.hpp"
#include "qcorr/measurements.hpp"

namespace qcorr {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view s);

// True when the AVX2 kernel was compiled in and the CPU supports it.
bool avx2_available();
Isa active_isa();
// Throws DomainError when the requested variant is unavailable.
void set_isa(Isa isa);

// out[i] = closed-form measure of Bell-diagonal (c1[i], c2[i], c3[i]).
// Points must be physical; values are not clamped at zero.
void bell_measure_batch(MeasureKind kind, const WeakStrength& x, std::span<const double> c1,
                        std::span<const double> c2, std::span<const double> c3, std::span<double> out);
void bell_measure_batch(Isa isa, MeasureKind kind, const WeakStrength& x, std::span<const double> c1,
                        std::span<const double> c2, std::span<const double> c3, std::span<double> out);

// out[i] = y[i] log2 y[i], 0 for y[i] <= 0.
void xlog2x_batch(Isa isa, std::span<const double> y, std::span<double> out);

namespace detail {

struct BellBatchArgs {
  int kind;           // static_cast<int>(MeasureKind)
  double tanh_x;      // 1 in the projective limit
  double sech_x;      // 0 in the projective limit
  const double* c1;
  const double* c2;
  const double* c3;
  double* out;
  std::size_t n;
};

void bell_measure_scalar(const BellBatchArgs& args) noexcept;
void xlog2x_scalar(const double* y, double* out, std::size_t n) noexcept;

#if QCORR_HAVE_AVX2
void bell_measure_avx2(const BellBatchArgs& args) noexcept;
void xlog2x_avx2(const double* y, double* out, std::size_t n) noexcept;
#endif

}  // namespace detail

}  // namespace qcorr
