#pragma once

// Gated emitter as a point charge plus an oppositely charged coplanar ring
// (tip + gate aperture). Outside the ring the potential is the monopole term
// minus the ring's exterior multipole series in even Legendre polynomials:
//
//   phi(r, theta) = q_tip/r
//     - (q_ring/r) Sum_l (-1)^l [(2l)! / (2^{2l} (l!)^2)] P_{2l}(cos theta) r^{-2l}
//
// with r in units of the ring (gate aperture) radius. On the axis the series
// sums to the closed form q_tip/r - q_ring/sqrt(1+r^2), which doubles as the
// test oracle. Potentials are in units of q/(4 pi eps0 a_g).

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sce {
namespace saturn {

/// Legendre polynomial P_n(x) by the three-term recurrence.
inline double legendre_p(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_p: require n >= 0");
  if (n == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= n; ++k) {
    const double pn = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
    pm1 = p;
    p = pn;
  }
  return p;
}

struct SaturnConfig {
  double q_tip;
  double q_ring;
  int l_max = 40;
  double tol = 1e-12;

  SaturnConfig(double q_tip_, double q_ring_, int l_max_ = 40,
               double tol_ = 1e-12)
      : q_tip(q_tip_), q_ring(q_ring_), l_max(l_max_), tol(tol_) {
    if (!(q_tip >= 0.0) || !(q_ring >= 0.0))
      throw std::domain_error("SaturnConfig: charges must be >= 0");
    if (l_max < 1) throw std::domain_error("SaturnConfig: require l_max >= 1");
  }

  // The model assumes comparable tip and ring charges.
  std::optional<std::string> charge_balance_warning() const {
    if (q_tip == 0.0 || q_ring == 0.0) return std::nullopt;
    const double ratio = q_tip / q_ring;
    if (ratio < 0.1 || ratio > 10.0)
      return "saturn: q_tip/q_ring = " + std::to_string(ratio) +
             " outside [0.1, 10]; the model assumes comparable charges";
    return std::nullopt;
  }
};

/// Truncated series potential at (r, theta), r > 1. Terms stop when their
/// magnitude falls below tol or l reaches l_max.
inline double saturn_potential(const SaturnConfig& cfg, double r,
                               double theta) {
  if (!(r > 1.0))
    throw std::domain_error("saturn_potential: series diverges for r <= 1");
  const double ct = std::cos(theta);
  const double inv_r2 = 1.0 / (r * r);
  double coeff = 1.0; // (2l)! / (2^{2l} (l!)^2), built up iteratively
  double radial = 1.0; // r^{-2l}
  double sign = 1.0;
  double sum = 0.0;
  for (int l = 0; l <= cfg.l_max; ++l) {
    const double term = sign * coeff * legendre_p(2 * l, ct) * radial;
    sum += term;
    if (std::abs(term) < cfg.tol && l > 0) break;
    coeff *= (2.0 * l + 1.0) / (2.0 * l + 2.0);
    radial *= inv_r2;
    sign = -sign;
  }
  return cfg.q_tip / r - (cfg.q_ring / r) * sum;
}

/// Exact on-axis potential (point minus unit-radius ring): the oracle the
/// series is checked against.
inline double axial_exact(const SaturnConfig& cfg, double r) {
  return cfg.q_tip / r - cfg.q_ring / std::sqrt(1.0 + r * r);
}

struct DecaySample {
  double r;
  double phi_saturn;
  double phi_bare; // ungated: q_tip/r
  double ratio;    // phi_saturn / phi_bare
};

/// On-axis comparison of the gated and bare potentials over an r grid.
/// With q_tip = q_ring the gated potential falls off as r^{-3} versus the
/// bare r^{-1}, so the ratio drops to zero: the gated array looks 1D sooner.
inline std::vector<DecaySample> decay_comparison(const SaturnConfig& cfg,
                                                 const std::vector<double>& r_grid,
                                                 double theta = 0.0) {
  std::vector<DecaySample> out;
  out.reserve(r_grid.size());
  for (const double r : r_grid) {
    const double phi_s = saturn_potential(cfg, r, theta);
    const double phi_b = cfg.q_tip / r;
    out.push_back({r, phi_s, phi_b, phi_b != 0.0 ? phi_s / phi_b : 0.0});
  }
  return out;
}

} // namespace saturn
} // namespace sce
