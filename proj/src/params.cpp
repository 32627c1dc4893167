#include "pspin/params.hpp"

#include <cmath>
#include <string>

#include "pspin/error.hpp"

namespace pspin {

void validate_order(int p) {
  if (p < 3 || p % 2 == 0) {
    throw InvalidParams("interaction order p must be odd and >= 3, got " + std::to_string(p));
  }
}

void validate_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidParams(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

ModelParams::ModelParams(int p, int n, double s, double lam) : p_(p), n_(n), s_(s), lam_(lam) {
  validate_order(p);
  if (n < 2) throw InvalidParams("spin count N must be >= 2, got " + std::to_string(n));
  validate_unit_interval(s, "s");
  validate_unit_interval(lam, "lambda");
}

}  // namespace pspin
