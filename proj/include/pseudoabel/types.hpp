#pragma once

#include <cmath>
#include <complex>

namespace pseudoabel {

using Complex = std::complex<double>;

// Relative tolerance for distinctness of spectrum entries.
inline constexpr double kTolSpec = 1e-12;
// Absolute tolerance for merging exponents in asymptotics and pole reports.
inline constexpr double kTolPole = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEps = 2.220446049250313e-16;

// Point of the universal cover of the punctured disk: modulus * e^{i argument}.
struct SectorPoint {
  double modulus = 1.0;
  double argument = 0.0;

  Complex log() const { return {std::log(modulus), argument}; }
  Complex value() const { return std::polar(modulus, argument); }
};

inline SectorPoint real_point(double t) { return {t, 0.0}; }

}  // namespace pseudoabel
