#include <algorithm>
#include <cmath>

#include "pseudoabel/jseries.hpp"

namespace pseudoabel {

Complex phi_stable(Complex z) {
  const double az = std::abs(z);
  if (az == 0.0) return 1.0;
  if (az < 1e-4) {
    return 1.0 + z * (0.5 + z * (1.0 / 6 + z * (1.0 / 24 + z / 120.0)));
  }
  const double x = z.real();
  const double y = z.imag();
  if (x > 700.0) return std::exp(z - std::log(z));
  // Re(e^z - 1) without cancellation: expm1(x) cos y - 2 sin^2(y/2).
  const double s = std::sin(0.5 * y);
  const Complex em1(std::expm1(x) * std::cos(y) - 2.0 * s * s,
                    std::exp(x) * std::sin(y));
  return em1 / z;
}

Complex compensator(double x, double y, Complex log_t) {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return std::exp(lo * log_t) * log_t * phi_stable((hi - lo) * log_t);
}

double compensator_derivative(double x, double y, double t) {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  const double L = std::log(t);
  const double ell = std::exp(lo * L) * L * phi_stable((hi - lo) * L).real();
  return (std::exp(hi * L) + lo * ell) / t;
}

Complex compensator_eval(int p, int q, double lambda, double mu,
                         SectorPoint point) {
  if (!(lambda > 0.0) || !(mu > 0.0)) {
    fail(ErrorCode::Domain, "compensator exponents need lambda, mu > 0");
  }
  if (!(point.modulus > 0.0)) {
    fail(ErrorCode::Domain, "modulus must be positive");
  }
  return compensator(p / lambda, q / mu, point.log());
}

Complex exp_divided_difference(Complex c, double x, double y) {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return std::exp(c * lo) * c * phi_stable(c * (hi - lo));
}

}  // namespace pseudoabel
