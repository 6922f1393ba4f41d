#include <cmath>

#include "qcorr/kernels.hpp"

namespace qcorr::detail {

namespace {

inline double xl(double y) { return y <= 0.0 ? 0.0 : y * std::log2(y); }

// Σ y log2 y over the four Bell-basis weights of (a1, a2, a3).
inline double neg_entropy(double a1, double a2, double a3) {
  return xl(0.25 * (1.0 - a1 - a2 - a3)) + xl(0.25 * (1.0 - a1 + a2 + a3)) + xl(0.25 * (1.0 + a1 - a2 + a3)) +
         xl(0.25 * (1.0 + a1 + a2 - a3));
}

}  // namespace

void xlog2x_scalar(const double* y, double* out, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = xl(y[i]);
}

void bell_measure_scalar(const BellBatchArgs& args) noexcept {
  const auto kind = static_cast<MeasureKind>(args.kind);
  const bool deficit = is_deficit(kind);
  for (std::size_t i = 0; i < args.n; ++i) {
    const double c1 = args.c1[i], c2 = args.c2[i], c3 = args.c3[i];
    const double a1 = std::abs(c1), a2 = std::abs(c2), a3 = std::abs(c3);
    const double ns = neg_entropy(c1, c2, c3);
    if (!deficit) {
      const double a = std::fmax(a1, std::fmax(a2, a3)) * args.tanh_x;
      args.out[i] = ns + 2.0 - 0.5 * (xl(1.0 - a) + xl(1.0 + a));
    } else {
      const bool d1 = a1 >= a2 && a1 >= a3;
      const bool d2 = !d1 && a2 >= a3;
      const bool d3 = !d1 && !d2;
      const double s = args.sech_x;
      args.out[i] = ns - neg_entropy(d1 ? c1 : s * c1, d2 ? c2 : s * c2, d3 ? c3 : s * c3);
    }
  }
}

}  // namespace qcorr::detail
