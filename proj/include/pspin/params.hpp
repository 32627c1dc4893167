#pragma once

namespace pspin {

/// Coordinates of every computation: interaction order p, spin count N,
/// annealing parameter s and stoquasticity parameter lambda.
///
/// p must be odd and >= 3, N >= 2, s and lambda in [0, 1]. The constructor
/// throws InvalidParams otherwise, so a ModelParams value is always valid.
class ModelParams {
 public:
  ModelParams(int p, int n, double s, double lam);

  int p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  double s() const noexcept { return s_; }
  double lam() const noexcept { return lam_; }

  ModelParams with_s(double s) const { return {p_, n_, s, lam_}; }
  ModelParams with_lam(double lam) const { return {p_, n_, s_, lam}; }
  ModelParams with_n(int n) const { return {p_, n, s_, lam_}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  int p_;
  int n_;
  double s_;
  double lam_;
};

/// Checks only the interaction order (odd, >= 3). Used by code paths that do
/// not depend on N, such as the semiclassical potential.
void validate_order(int p);

/// Checks that x lies in [0, 1]; `what` names the parameter in the message.
void validate_unit_interval(double x, const char* what);

}  // namespace pspin
