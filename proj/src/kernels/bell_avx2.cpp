// Compiled with -mavx2. Only reached through the dispatcher after a CPU
// feature check.

#include <immintrin.h>

#include <cstdint>

#include "qcorr/kernels.hpp"

namespace qcorr::detail {

namespace {

constexpr std::size_t kLanes = 4;

// log2 for strictly positive normal inputs. Range reduction to
// m in [sqrt(1/2), sqrt(2)), then ln m = 2 atanh(f), f = (m-1)/(m+1),
// with the odd series truncated after f^23 (|f| <= 0.1716).
inline __m256d log2_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);

  // Biased exponent as double via the 2^52 magic constant.
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);  // 2^52
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(magic))), magic);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d f2 = _mm256_mul_pd(f, f);

  __m256d p = _mm256_set1_pd(1.0 / 23.0);
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 21.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), _mm256_set1_pd(1.0 / 3.0));
  p = _mm256_add_pd(_mm256_mul_pd(p, f2), one);

  // ln m = 2 f p;  log2 m = ln m / ln 2
  const __m256d ln_m = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), f), p);
  return _mm256_add_pd(e, _mm256_mul_pd(ln_m, _mm256_set1_pd(1.4426950408889634)));
}

// y log2 y, zero for y below the smallest normal double.
inline __m256d xlog2x_pd(__m256d y) {
  const __m256d tiny = _mm256_set1_pd(2.2250738585072014e-308);
  const __m256d live = _mm256_cmp_pd(y, tiny, _CMP_GE_OQ);
  const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), y, live);
  return _mm256_and_pd(live, _mm256_mul_pd(safe, log2_pd(safe)));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d neg_entropy_pd(__m256d a1, __m256d a2, __m256d a3) {
  const __m256d q = _mm256_set1_pd(0.25);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d l5 = _mm256_mul_pd(q, _mm256_sub_pd(_mm256_sub_pd(_mm256_sub_pd(one, a1), a2), a3));
  const __m256d l6 = _mm256_mul_pd(q, _mm256_add_pd(_mm256_add_pd(_mm256_sub_pd(one, a1), a2), a3));
  const __m256d l7 = _mm256_mul_pd(q, _mm256_add_pd(_mm256_sub_pd(_mm256_add_pd(one, a1), a2), a3));
  const __m256d l8 = _mm256_mul_pd(q, _mm256_sub_pd(_mm256_add_pd(_mm256_add_pd(one, a1), a2), a3));
  return _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(xlog2x_pd(l5), xlog2x_pd(l6)), xlog2x_pd(l7)), xlog2x_pd(l8));
}

}  // namespace

void xlog2x_avx2(const double* y, double* out, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, xlog2x_pd(_mm256_loadu_pd(y + i)));
  if (i < n) xlog2x_scalar(y + i, out + i, n - i);
}

void bell_measure_avx2(const BellBatchArgs& args) noexcept {
  const auto kind = static_cast<MeasureKind>(args.kind);
  const bool deficit = is_deficit(kind);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d t = _mm256_set1_pd(args.tanh_x);
  const __m256d s = _mm256_set1_pd(args.sech_x);

  std::size_t i = 0;
  for (; i + kLanes <= args.n; i += kLanes) {
    const __m256d c1 = _mm256_loadu_pd(args.c1 + i);
    const __m256d c2 = _mm256_loadu_pd(args.c2 + i);
    const __m256d c3 = _mm256_loadu_pd(args.c3 + i);
    const __m256d a1 = abs_pd(c1), a2 = abs_pd(c2), a3 = abs_pd(c3);
    const __m256d ns = neg_entropy_pd(c1, c2, c3);
    __m256d v;
    if (!deficit) {
      const __m256d a = _mm256_mul_pd(_mm256_max_pd(a1, _mm256_max_pd(a2, a3)), t);
      const __m256d b = _mm256_mul_pd(half, _mm256_add_pd(xlog2x_pd(_mm256_sub_pd(one, a)),
                                                          xlog2x_pd(_mm256_add_pd(one, a))));
      v = _mm256_sub_pd(_mm256_add_pd(ns, two), b);
    } else {
      const __m256d d1 = _mm256_and_pd(_mm256_cmp_pd(a1, a2, _CMP_GE_OQ), _mm256_cmp_pd(a1, a3, _CMP_GE_OQ));
      const __m256d d2 = _mm256_andnot_pd(d1, _mm256_cmp_pd(a2, a3, _CMP_GE_OQ));
      const __m256d d3 = _mm256_andnot_pd(_mm256_or_pd(d1, d2), _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));
      const __m256d e1 = _mm256_blendv_pd(_mm256_mul_pd(s, c1), c1, d1);
      const __m256d e2 = _mm256_blendv_pd(_mm256_mul_pd(s, c2), c2, d2);
      const __m256d e3 = _mm256_blendv_pd(_mm256_mul_pd(s, c3), c3, d3);
      v = _mm256_sub_pd(ns, neg_entropy_pd(e1, e2, e3));
    }
    _mm256_storeu_pd(args.out + i, v);
  }
  if (i < args.n) {
    BellBatchArgs tail = args;
    tail.c1 += i;
    tail.c2 += i;
    tail.c3 += i;
    tail.out += i;
    tail.n -= i;
    bell_measure_scalar(tail);
  }
}

}  // namespace qcorr::detail
