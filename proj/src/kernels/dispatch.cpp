#include <atomic>
#include <cstdlib>
#include <string>

#include "qcorr/error.hpp"
#include "qcorr/kernels.hpp"

namespace qcorr {

namespace {

bool cpu_has_avx2() {
#if QCORR_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("QCORR_KERNEL")) {
    const auto requested = parse_isa(env);
    if (requested == Isa::Scalar) return Isa::Scalar;
    if (requested == Isa::Avx2 && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& isa_slot() {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

void require_same_size(std::size_t n, std::size_t m) {
  if (n != m) throw DomainError("batch spans differ in length");
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::optional<Isa> parse_isa(std::string_view s) {
  if (s == "scalar") return Isa::Scalar;
  if (s == "avx2") return Isa::Avx2;
  return std::nullopt;
}

bool avx2_available() { return cpu_has_avx2(); }

Isa active_isa() { return isa_slot().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) throw DomainError("AVX2 kernel is not available on this machine");
  isa_slot().store(isa, std::memory_order_relaxed);
}

void bell_measure_batch(MeasureKind kind, const WeakStrength& x, std::span<const double> c1,
                        std::span<const double> c2, std::span<const double> c3, std::span<double> out) {
  bell_measure_batch(active_isa(), kind, x, c1, c2, c3, out);
}

void bell_measure_batch(Isa isa, MeasureKind kind, const WeakStrength& x, std::span<const double> c1,
                        std::span<const double> c2, std::span<const double> c3, std::span<double> out) {
  require_same_size(c1.size(), out.size());
  require_same_size(c2.size(), out.size());
  require_same_size(c3.size(), out.size());
  // The projective kinds ignore x.
  const bool weak = is_weak(kind);
  const detail::BellBatchArgs args{static_cast<int>(kind),
                                   weak ? x.tanh() : 1.0,
                                   weak ? x.sech() : 0.0,
                                   c1.data(),
                                   c2.data(),
                                   c3.data(),
                                   out.data(),
                                   out.size()};
#if QCORR_HAVE_AVX2
  if (isa == Isa::Avx2) {
    if (!avx2_available()) throw DomainError("AVX2 kernel is not available on this machine");
    detail::bell_measure_avx2(args);
    return;
  }
#endif
  if (isa == Isa::Avx2) throw DomainError("AVX2 kernel is not available on this machine");
  detail::bell_measure_scalar(args);
}

void xlog2x_batch(Isa isa, std::span<const double> y, std::span<double> out) {
  require_same_size(y.size(), out.size());
#if QCORR_HAVE_AVX2
  if (isa == Isa::Avx2) {
    if (!avx2_available()) throw DomainError("AVX2 kernel is not available on this machine");
    detail::xlog2x_avx2(y.data(), out.data(), y.size());
    return;
  }
#endif
  if (isa == Isa::Avx2) throw DomainError("AVX2 kernel is not available on this machine");
  detail::xlog2x_scalar(y.data(), out.data(), y.size());
}

}  // namespace qcorr
