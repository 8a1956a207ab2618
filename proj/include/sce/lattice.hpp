#pragma once

// Electrostatics of a square array of emitter tips, pitch a_tt. The monopole
// model puts one point charge per tip at z = 0 with opposite images at z = N
// so the plane z = N/2 is an equipotential ("anode"); the dipole model pairs
// +/- charges at z = +/- d in a background field. Infinite sums are truncated
// at disk radius M and closed with analytic integral tails; summation order
// is fixed (radial shells, ascending) so results are deterministic.
//
// All lengths are in units of a_tt. With the default charge strength the
// parallel-plate field F_o = lambda/(eps0 a_tt^2) is 1, so fields come out
// in F_o units and potentials in units of lambda/(4 pi eps0 a_tt).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sce/units.hpp"

namespace sce {
namespace lattice {

struct LatticeGeometry {
  double a_tt = 1.0;   // pitch [nm]
  double lambda = 0.0; // charge strength [q*nm]; 0 = pick so F_o = 1
  double n = 0.0;      // image index: anode plane at z = N/2
  double m = 0.0;      // truncation disk radius
  double d = 0.0;      // dipole half-spacing (dipole model only)

  double charge() const {
    return lambda > 0.0 ? lambda
                        : units::constants::eps0 * a_tt * a_tt; // F_o = 1
  }
  // lambda / (4 pi eps0 a_tt)
  double potential_scale() const {
    return charge() / (4.0 * M_PI * units::constants::eps0 * a_tt);
  }
  // F_o = lambda / (eps0 a_tt^2)
  double field_scale() const {
    return charge() / (units::constants::eps0 * a_tt * a_tt);
  }

  void require_monopole() const {
    if (!(n >= 1.0) || !(m >= 1.0))
      throw std::domain_error("lattice: require N >= 1 and M >= 1");
    if (m < 2.0 * n)
      throw std::domain_error("lattice: require M >= 2N for adequate truncation");
  }
  void require_dipole() const {
    if (!(m >= 1.0))
      throw std::domain_error("lattice: require M >= 1");
    if (!(d > 0.0 && d < 1.0))
      throw std::domain_error("lattice: dipole needs 0 < d < 1");
  }
};

struct FieldPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Periodic reduction of (x, y) to [-1/2, 1/2].
inline FieldPoint reduce(const FieldPoint& p) {
  return {p.x - std::round(p.x), p.y - std::round(p.y), p.z};
}

// Lattice offsets inside the disk j^2+k^2 < M^2, radial shells ascending.
// The last result is memoized per thread: sweeps re-enumerate the same disk
// for every sample point otherwise.
inline const std::vector<std::pair<int, int>>& shell_offsets(double m) {
  thread_local double cached_m = -1.0;
  thread_local std::vector<std::pair<int, int>> cached;
  if (m == cached_m) return cached;
  const int b = static_cast<int>(std::ceil(m));
  std::vector<std::pair<int, int>> pts;
  pts.reserve(static_cast<std::size_t>(M_PI * m * m) + 4 * b + 8);
  for (int j = -b; j <= b; ++j)
    for (int k = -b; k <= b; ++k)
      if (j * j + k * k < m * m) pts.emplace_back(j, k);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b2) {
    const int ra = a.first * a.first + a.second * a.second;
    const int rb = b2.first * b2.first + b2.second * b2.second;
    if (ra != rb) return ra < rb;
    return a < b2;
  });
  cached = std::move(pts);
  cached_m = m;
  return cached;
}

namespace detail {

// Charge-plus-image potential term. 1/R_c - 1/R_a cancels badly at large
// radius; the product form N(N-2z)/(R_c R_a (R_c+R_a)) does not.
inline double pair_potential(double rho2, double z, double n) {
  const double rc = std::sqrt(rho2 + z * z);
  const double ra = std::sqrt(rho2 + (n - z) * (n - z));
  return n * (n - 2.0 * z) / (rc * ra * (rc + ra));
}

inline double pair_field(double rho2, double z, double n) {
  const double rc2 = rho2 + z * z;
  const double ra2 = rho2 + (n - z) * (n - z);
  return z / (rc2 * std::sqrt(rc2)) + (n - z) / (ra2 * std::sqrt(ra2));
}

// Dipole term in the same cancellation-safe shape: the monopole form under
// N -> 2d, z -> z+d, i.e. numerator -4dz with legs at z +/- d.
inline double dipole_pair_potential(double rho2, double z, double d) {
  const double rp = std::sqrt(rho2 + (z + d) * (z + d));
  const double rm = std::sqrt(rho2 + (z - d) * (z - d));
  return -4.0 * d * z / (rp * rm * (rp + rm));
}

inline double dipole_pair_field(double rho2, double z, double d) {
  const double rp2 = rho2 + (z + d) * (z + d);
  const double rm2 = rho2 + (z - d) * (z - d);
  return (z + d) / (rp2 * std::sqrt(rp2)) + (d - z) / (rm2 * std::sqrt(rm2));
}

// Sum term(rho^2) over lattice points with |(j,k) - (x,y)| < M: truncating
// on the distance from the evaluation point keeps the geometry radially
// symmetric about it, which is what the plain radial tails assume. Used by
// the point evaluators; the ripple metrics need one shared point set for
// both of their evaluation points and carry their own summation loop.
template <class Term>
double disk_sum(double m, double x, double y, Term&& term) {
  const int b = static_cast<int>(std::ceil(m)) + 1;
  const double m2 = m * m;
  struct Entry {
    double rho2;
    int j, k;
  };
  std::vector<Entry> pts;
  pts.reserve(static_cast<std::size_t>(M_PI * m * m) + 8 * b + 8);
  const int jc = static_cast<int>(std::round(x));
  const int kc = static_cast<int>(std::round(y));
  for (int j = jc - b; j <= jc + b; ++j) {
    for (int k = kc - b; k <= kc + b; ++k) {
      const double dx = j - x, dy = k - y;
      const double rho2 = dx * dx + dy * dy;
      if (rho2 < m2) pts.push_back({rho2, j, k});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const Entry& a, const Entry& c) {
    if (a.rho2 != c.rho2) return a.rho2 < c.rho2;
    if (a.j != c.j) return a.j < c.j;
    return a.k < c.k;
  });
  double s = 0.0;
  for (const auto& e : pts) s += term(e.rho2);
  return s;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Integral tails of the raw sums over the excluded region j^2+k^2 >= M^2
// (unit charge density, so the tail is 2 pi Int_M^inf r f(r) dr).

/// Tail of Sum phi_jk: 2 pi [ sqrt(M^2+(N-z)^2) - sqrt(M^2+z^2) ].
inline double monopole_potential_tail(double n, double m, double z) {
  return 2.0 * M_PI *
         (std::sqrt(m * m + (n - z) * (n - z)) - std::sqrt(m * m + z * z));
}

/// Tail of Sum phi'_jk: 2 pi [ z/sqrt(M^2+z^2) + (N-z)/sqrt(M^2+(N-z)^2) ].
inline double monopole_field_tail(double n, double m, double z) {
  return 2.0 * M_PI *
         (z / std::sqrt(m * m + z * z) +
          (n - z) / std::sqrt(m * m + (n - z) * (n - z)));
}

inline double dipole_potential_tail(double d, double m, double z) {
  return 2.0 * M_PI * (std::sqrt(m * m + (z - d) * (z - d)) -
                       std::sqrt(m * m + (z + d) * (z + d)));
}

inline double dipole_field_tail(double d, double m, double z) {
  return 2.0 * M_PI * ((z + d) / std::sqrt(m * m + (z + d) * (z + d)) +
                       (d - z) / std::sqrt(m * m + (z - d) * (z - d)));
}

// ---------------------------------------------------------------------------

/// Monopole-array potential at p (periodically reduced), tail-corrected:
/// V = V_0 + (lambda/(4 pi eps0 a_tt)) [ Sum phi_jk + tail ].
inline double monopole_potential(const LatticeGeometry& geom,
                                 const FieldPoint& point, double v_0) {
  geom.require_monopole();
  const FieldPoint p = reduce(point);
  if (!(p.z > 0.0 && p.z <= geom.n / 2.0))
    throw std::domain_error("monopole_potential: require 0 < z <= N/2");
  const double sum = detail::disk_sum(geom.m, p.x, p.y, [&](double rho2) {
    return detail::pair_potential(rho2, p.z, geom.n);
  });
  return v_0 + geom.potential_scale() *
                   (sum + monopole_potential_tail(geom.n, geom.m, p.z));
}

/// z component of the monopole-array field in F_o units:
/// F_z/F_o = (1/4pi) Sum phi'_jk + (1/2)[ z/sqrt(M^2+z^2) + (N-z)/sqrt(...) ].
/// Approaches 1 (the parallel-plate field) for large z and M.
inline double monopole_field_z(const LatticeGeometry& geom,
                               const FieldPoint& point) {
  geom.require_monopole();
  const FieldPoint p = reduce(point);
  if (!(p.z > 0.0 && p.z <= geom.n / 2.0))
    throw std::domain_error("monopole_field_z: require 0 < z <= N/2");
  const double sum = detail::disk_sum(geom.m, p.x, p.y, [&](double rho2) {
    return detail::pair_field(rho2, p.z, geom.n);
  });
  return (sum + monopole_field_tail(geom.n, geom.m, p.z)) / (4.0 * M_PI);
}

/// Truncated-disk field with no tail and no periodic reduction: the charges
/// fill the fixed disk j^2+k^2 < M^2 and the point scans across it. This is
/// the quantity whose undulations die off above the array and which sags
/// toward the disk edge; compare against disk_field_closed_form.
inline double finite_disk_field_z(const LatticeGeometry& geom,
                                  const FieldPoint& p) {
  geom.require_monopole();
  if (!(p.z > 0.0 && p.z <= geom.n / 2.0))
    throw std::domain_error("finite_disk_field_z: require 0 < z <= N/2");
  double sum = 0.0;
  for (const auto& [j, k] : shell_offsets(geom.m)) {
    const double dx = j - p.x, dy = k - p.y;
    sum += detail::pair_field(dx * dx + dy * dy, p.z, geom.n);
  }
  return sum / (4.0 * M_PI);
}

/// Same fixed-disk evaluation for the potential (used by the array maps).
inline double finite_disk_potential(const LatticeGeometry& geom,
                                    const FieldPoint& p, double v_0) {
  geom.require_monopole();
  if (!(p.z > 0.0 && p.z <= geom.n / 2.0))
    throw std::domain_error("finite_disk_potential: require 0 < z <= N/2");
  double sum = 0.0;
  for (const auto& [j, k] : shell_offsets(geom.m)) {
    const double dx = j - p.x, dy = k - p.y;
    sum += detail::pair_potential(dx * dx + dy * dy, p.z, geom.n);
  }
  return v_0 + geom.potential_scale() * sum;
}

/// Integral form of the truncated-disk field:
/// F_M/F_o = 1 - z/(2 sqrt(M^2+z^2)) - (N-z)/(2 sqrt(M^2+(N-z)^2)).
inline double disk_field_closed_form(double n, double m, double z) {
  if (!(z > 0.0 && z < n))
    throw std::domain_error("disk_field_closed_form: require 0 < z < N");
  return 1.0 - z / (2.0 * std::sqrt(m * m + z * z)) -
         (n - z) / (2.0 * std::sqrt(m * m + (n - z) * (n - z)));
}

enum class ArrayModel { monopole, dipole };

struct RippleMetrics {
  double r_phi;
  double r_field;
};

namespace detail {

// Outer integrals Int_R^inf rho * kernel(rho) drho of the two kernel pairs.
inline double pot_outer(double r, double z, double n) {
  return std::sqrt(r * r + (n - z) * (n - z)) - std::sqrt(r * r + z * z);
}
inline double fld_outer(double r, double z, double n) {
  return z / std::sqrt(r * r + z * z) +
         (n - z) / std::sqrt(r * r + (n - z) * (n - z));
}

// Tail of the corner-point sum. The point sits at r0 = (1/2, 1/2) inside the
// origin-centered disk, so the excluded region is |u + r0| > M in coordinates
// centered on the point. Integrating the radial antiderivative over the exact
// boundary radius rho_b(theta) (trapezoid rule; the integrand is analytic and
// periodic, so this converges to machine precision) removes the O(M^-3)
// center-vs-corner bias that a plain radial tail leaves in the ripple ratio.
template <class Outer>
double shifted_tail(double m, double x0, double y0, Outer&& outer) {
  const double r0 = std::hypot(x0, y0);
  const double th0 = std::atan2(y0, x0);
  constexpr int quad_points = 256;
  double acc = 0.0;
  for (int i = 0; i < quad_points; ++i) {
    const double th = 2.0 * M_PI * (i + 0.5) / quad_points;
    const double c = r0 * std::cos(th - th0);
    const double rho_b = -c + std::sqrt(m * m - r0 * r0 + c * c);
    acc += outer(rho_b);
  }
  return 2.0 * M_PI * acc / quad_points;
}

} // namespace detail

/// On-axis (0,0,z) vs cell-corner (1/2,1/2,z) ratios, minus one, of the
/// tail-corrected raw sums: how fast the discrete array blurs into a uniform
/// sheet. Both points share one origin-centered point set; the corner tail is
/// the exact excluded-domain integral (see shifted_tail). The monopole metric
/// leaves the constant anode offset out (it would only damp the ratio); for the
/// dipole the background field must be kept, because the dipole sheet alone
/// contributes no net far field and the backgroundless field ratio is 0/0.
inline RippleMetrics ripple_metrics(const LatticeGeometry& geom, double z,
                                    ArrayModel model) {
  if (!(z > 0.0)) throw std::domain_error("ripple_metrics: require z > 0");
  if (!(geom.m >= 1.0))
    throw std::domain_error("ripple_metrics: require M >= 1");

  double pc = 0, pe = 0, fc = 0, fe = 0;
  double tpc, tfc, tpe, tfe;
  double pot_bg = 0.0, fld_bg = 0.0; // background, raw-sum units

  if (model == ArrayModel::monopole) {
    if (!(geom.n >= 1.0))
      throw std::domain_error("ripple_metrics: require N >= 1");
    if (!(z < geom.n / 2.0))
      throw std::domain_error("ripple_metrics: monopole needs z < N/2");
    for (const auto& [j, k] : shell_offsets(geom.m)) {
      const double dxc = j - 0.5, dyc = k - 0.5;
      pc += detail::pair_potential(j * j + k * k, z, geom.n);
      pe += detail::pair_potential(dxc * dxc + dyc * dyc, z, geom.n);
      fc += detail::pair_field(j * j + k * k, z, geom.n);
      fe += detail::pair_field(dxc * dxc + dyc * dyc, z, geom.n);
    }
    const auto pot_out = [&](double r) { return detail::pot_outer(r, z, geom.n); };
    const auto fld_out = [&](double r) { return detail::fld_outer(r, z, geom.n); };
    tpc = 2.0 * M_PI * pot_out(geom.m);
    tfc = 2.0 * M_PI * fld_out(geom.m);
    tpe = detail::shifted_tail(geom.m, 0.5, 0.5, pot_out);
    tfe = detail::shifted_tail(geom.m, 0.5, 0.5, fld_out);
  } else {
    geom.require_dipole();
    for (const auto& [j, k] : shell_offsets(geom.m)) {
      const double dxc = j - 0.5, dyc = k - 0.5;
      pc += detail::dipole_pair_potential(j * j + k * k, z, geom.d);
      pe += detail::dipole_pair_potential(dxc * dxc + dyc * dyc, z, geom.d);
      fc += detail::dipole_pair_field(j * j + k * k, z, geom.d);
      fe += detail::dipole_pair_field(dxc * dxc + dyc * dyc, z, geom.d);
    }
    // dipole kernels are the monopole ones under N -> 2d, z -> z+d
    const auto pot_out = [&](double r) {
      return detail::pot_outer(r, z + geom.d, 2.0 * geom.d);
    };
    const auto fld_out = [&](double r) {
      return detail::fld_outer(r, z + geom.d, 2.0 * geom.d);
    };
    tpc = 2.0 * M_PI * pot_out(geom.m);
    tfc = 2.0 * M_PI * fld_out(geom.m);
    tpe = detail::shifted_tail(geom.m, 0.5, 0.5, pot_out);
    tfe = detail::shifted_tail(geom.m, 0.5, 0.5, fld_out);
    pot_bg = 4.0 * M_PI * z; // F_o z over the potential scale
    fld_bg = 4.0 * M_PI;     // F_o in raw field-sum units
  }

  return {(pot_bg + pc + tpc) / (pot_bg + pe + tpe) - 1.0,
          (fld_bg + fc + tfc) / (fld_bg + fe + tfe) - 1.0};
}

/// Dipole-array potential in a background field:
/// V = F_o z + (lambda/(4 pi eps0 a_tt)) [ Sum (1/R_+ - 1/R_-) + tail ].
inline double dipole_potential(const LatticeGeometry& geom,
                               const FieldPoint& point, double f_o) {
  geom.require_dipole();
  const FieldPoint p = reduce(point);
  if (!(p.z >= 0.0))
    throw std::domain_error("dipole_potential: require z >= 0");
  const double sum = detail::disk_sum(geom.m, p.x, p.y, [&](double rho2) {
    return detail::dipole_pair_potential(rho2, p.z, geom.d);
  });
  return f_o * p.z + geom.potential_scale() *
                         (sum + dipole_potential_tail(geom.d, geom.m, p.z));
}

} // namespace lattice
} // namespace sce
