// AArch64 variant. Same operation order as the scalar reference, no fused
// multiply-add.

#include <arm_neon.h>

#include "pspin/kernels.hpp"
#include "row_kernels.hpp"

namespace pspin::kernels::neon {

void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y) {
  const std::size_t n = diag.size();
  std::size_t i = 0;
  for (; i < n && i < 2; ++i) y[i] = detail::banded_row(diag, band1, band2, x, i);

  const double* d = diag.data();
  const double* b1 = band1.data();
  const double* b2 = band2.data();
  const double* xv = x.data();
  for (; n >= 2 && i + 2 <= n - 2; i += 2) {
    float64x2_t acc = vmulq_f64(vld1q_f64(d + i), vld1q_f64(xv + i));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(b1 + i), vld1q_f64(xv + i + 1)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(b1 + i - 1), vld1q_f64(xv + i - 1)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(b2 + i), vld1q_f64(xv + i + 2)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(b2 + i - 2), vld1q_f64(xv + i - 2)));
    vst1q_f64(y.data() + i, acc);
  }
  for (; i < n; ++i) y[i] = detail::banded_row(diag, band1, band2, x, i);
}

void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out) {
  const std::size_t n = out.size();
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t vs = vdupq_n_f64(s);
  const float64x2_t neg_lam = vdupq_n_f64(0.0 - lam);
  const float64x2_t one_minus_lam = vdupq_n_f64(1.0 - lam);
  const float64x2_t one_minus_s = vdupq_n_f64(1.0 - s);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t base = vld1q_f64(cos_theta.data() + i);
    const float64x2_t sn = vld1q_f64(sin_theta.data() + i);
    float64x2_t cp = one;
    for (unsigned e = static_cast<unsigned>(p); e != 0; e >>= 1) {
      if (e & 1u) cp = vmulq_f64(cp, base);
      base = vmulq_f64(base, base);
    }
    const float64x2_t inner =
        vaddq_f64(vmulq_f64(neg_lam, cp), vmulq_f64(one_minus_lam, vmulq_f64(sn, sn)));
    vst1q_f64(out.data() + i, vsubq_f64(vmulq_f64(vs, inner), vmulq_f64(one_minus_s, sn)));
  }
  for (; i < n; ++i) {
    out[i] = detail::potential_point(cos_theta[i], sin_theta[i], p, s, lam);
  }
}

}  // namespace pspin::kernels::neon
