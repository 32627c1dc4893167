// Compiled with -mavx2 -ffp-contract=off. Explicit mul/add (no FMA) keeps
// results bit-identical to the scalar reference.

#include <immintrin.h>

#include "pspin/kernels.hpp"
#include "row_kernels.hpp"

namespace pspin::kernels::avx2 {

void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y) {
  const std::size_t n = diag.size();
  std::size_t i = 0;
  for (; i < n && i < 2; ++i) y[i] = detail::banded_row(diag, band1, band2, x, i);

  // Interior rows touch x[i-2 .. i+5] and band2[i .. i+3].
  const double* d = diag.data();
  const double* b1 = band1.data();
  const double* b2 = band2.data();
  const double* xv = x.data();
  for (; n >= 2 && i + 4 <= n - 2; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(xv + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(b1 + i),
                                           _mm256_loadu_pd(xv + i + 1)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(b1 + i - 1),
                                           _mm256_loadu_pd(xv + i - 1)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(b2 + i),
                                           _mm256_loadu_pd(xv + i + 2)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(b2 + i - 2),
                                           _mm256_loadu_pd(xv + i - 2)));
    _mm256_storeu_pd(y.data() + i, acc);
  }
  for (; i < n; ++i) y[i] = detail::banded_row(diag, band1, band2, x, i);
}

void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d neg_lam = _mm256_set1_pd(0.0 - lam);
  const __m256d one_minus_lam = _mm256_set1_pd(1.0 - lam);
  const __m256d one_minus_s = _mm256_set1_pd(1.0 - s);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d base = _mm256_loadu_pd(cos_theta.data() + i);
    const __m256d sn = _mm256_loadu_pd(sin_theta.data() + i);
    __m256d cp = one;
    for (unsigned e = static_cast<unsigned>(p); e != 0; e >>= 1) {
      if (e & 1u) cp = _mm256_mul_pd(cp, base);
      base = _mm256_mul_pd(base, base);
    }
    const __m256d inner = _mm256_add_pd(_mm256_mul_pd(neg_lam, cp),
                                        _mm256_mul_pd(one_minus_lam, _mm256_mul_pd(sn, sn)));
    const __m256d v = _mm256_sub_pd(_mm256_mul_pd(vs, inner), _mm256_mul_pd(one_minus_s, sn));
    _mm256_storeu_pd(out.data() + i, v);
  }
  for (; i < n; ++i) {
    out[i] = detail::potential_point(cos_theta[i], sin_theta[i], p, s, lam);
  }
}

}  // namespace pspin::kernels::avx2
