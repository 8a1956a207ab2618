#pragma once

// Independent verification engines. Nothing here references the universal
// current-field relation or the module summation/tail machinery: the shooter
// integrates the first-integral ODE dphi/dy = sqrt(4 j sqrt(phi) + f^2)
// directly with an adaptive Dormand-Prince 5(4) scheme, and the lattice
// oracle is a plain double sum with no tail correction. Tests (and the
// `oracle` CLI subcommand) use these to validate the closed forms.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sce/lattice.hpp"

namespace sce {
namespace oracle {

struct ShootingResult {
  double phi_end;      // phi(1)
  int steps;           // accepted steps
  double max_residual; // worst deviation from the second-integration relation
};

struct ShootingOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  int max_steps = 200000;
};

namespace detail {

inline double rhs(double phi, double f, double j) {
  const double p = phi > 0.0 ? phi : 0.0;
  return std::sqrt(4.0 * j * std::sqrt(p) + f * f);
}

// |(4j sqrt(phi) + f^2)^{1/2} (2j sqrt(phi) - f^2) + f^3 - 6 j^2 y|,
// normalized by max(1, 6j^2): an h-independent pathwise check.
inline double second_integral_residual(double y, double phi, double f,
                                       double j) {
  const double u = std::sqrt(phi > 0.0 ? phi : 0.0);
  const double w = 4.0 * j * u + f * f;
  const double lhs = std::sqrt(w) * (2.0 * j * u - f * f) + f * f * f;
  const double rhs6 = 6.0 * j * j * y;
  return std::abs(lhs - rhs6) / std::max(1.0, std::abs(rhs6));
}

} // namespace detail

/// Integrate the scaled diode ODE from the cathode (y=0, phi=0, slope f) to
/// the anode and report phi(1). For f = 0 the start is singular and the exact
/// leading series phi(y0) = ((3/2) sqrt(j) y0)^{4/3} at y0 = 1e-6 is used.
/// For a state on the true current-field curve, phi(1) = 1.
inline ShootingResult shoot(double f, double j,
                            const ShootingOptions& opt = {}) {
  if (!(f >= 0.0) || !(j >= 0.0) || (f == 0.0 && j == 0.0))
    throw std::domain_error("shoot: require f >= 0, j >= 0, not both zero");

  // Dormand-Prince 5(4) tableau (node abscissae drop out: the ODE is
  // autonomous in y).
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  double y = 0.0, phi = 0.0;
  if (f == 0.0) {
    y = 1e-6;
    phi = std::pow(1.5 * std::sqrt(j) * y, 4.0 / 3.0);
  }

  const auto fode = [&](double p) { return detail::rhs(p, f, j); };

  double h = 1e-4;
  int steps = 0;
  double max_res = detail::second_integral_residual(y, phi, f, j);
  double k1 = fode(phi);
  while (y < 1.0) {
    if (steps >= opt.max_steps)
      throw std::runtime_error("shoot: step cap exceeded");
    if (y + h > 1.0) h = 1.0 - y;

    const double k2 = fode(phi + h * a21 * k1);
    const double k3 = fode(phi + h * (a31 * k1 + a32 * k2));
    const double k4 = fode(phi + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 =
        fode(phi + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = fode(
        phi + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double phi5 =
        phi + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = fode(phi5);
    const double err_est = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                e6 * k6 + e7 * k7);
    const double scale =
        opt.abs_tol + opt.rel_tol * std::max(std::abs(phi), std::abs(phi5));
    const double err = std::abs(err_est) / scale;

    if (err <= 1.0) {
      y += h;
      phi = phi5;
      k1 = k7; // FSAL
      ++steps;
      const double res = detail::second_integral_residual(y, phi, f, j);
      if (res > max_res) max_res = res;
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, grow));
    if (h < 1e-15 && y < 1.0)
      throw std::runtime_error("shoot: step size underflow");
  }
  return {phi, steps, max_res};
}

struct BruteLatticeSums {
  double potential; // (lambda/(4 pi eps0 a_tt)) * Sum phi_jk, no V_0, no tail
  double field_z;   // (1/4pi) * Sum phi'_jk, F_o units, no tail
};

/// Direct double sum over j^2+k^2 < M_big^2 with no tail correction: bounds
/// the truncation+tail error of the lattice module. M_big should be at least
/// 4x the geometry's own disk radius.
inline BruteLatticeSums brute_lattice_sum(const lattice::LatticeGeometry& geom,
                                          const lattice::FieldPoint& point,
                                          double m_big) {
  if (!(m_big >= 4.0 * geom.m))
    throw std::domain_error("brute_lattice_sum: require M_big >= 4 M");
  const lattice::FieldPoint p = lattice::reduce(point);
  double pot = 0.0, fld = 0.0;
  const int b = static_cast<int>(std::ceil(m_big));
  for (int j = -b; j <= b; ++j) {
    for (int k = -b; k <= b; ++k) {
      if (j * j + k * k >= m_big * m_big) continue;
      const double dx = j - p.x, dy = k - p.y;
      const double rho2 = dx * dx + dy * dy;
      const double rc = std::sqrt(rho2 + p.z * p.z);
      const double ra = std::sqrt(rho2 + (geom.n - p.z) * (geom.n - p.z));
      pot += geom.n * (geom.n - 2.0 * p.z) / (rc * ra * (rc + ra));
      fld += p.z / (rc * rc * rc) + (geom.n - p.z) / (ra * ra * ra);
    }
  }
  return {geom.potential_scale() * pot, fld / (4.0 * M_PI)};
}

/// Deterministic low-discrepancy sequence on (0,1) (van der Corput, base b).
inline double halton(int index, int base = 2) {
  double result = 0.0, fraction = 1.0 / base;
  int i = index;
  while (i > 0) {
    result += (i % base) * fraction;
    i /= base;
    fraction /= base;
  }
  return result;
}

} // namespace oracle
} // namespace sce
