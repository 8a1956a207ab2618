#pragma once

// Fowler-Nordheim physics in dimensioned units: the dimensionless (a, b)
// pair for a given diode and material, the transition voltage where the
// space-charge solution passes through f = 2/3, j = 2/9, Schottky barrier
// lowering, the field-dependent effective work function that lets the
// triangular-barrier law mimic the image-charge law, and the order-1/2
// prefactor C of that equivalence.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sce/diode1d.hpp"
#include "sce/units.hpp"

namespace sce {
namespace fn {

// Dimensionless triangular-barrier coefficients of j = a f^2 exp(-b/f):
//   a = (1/(pi (mu+Phi))) sqrt(mu R_inf V_o / Phi)
//   b = (4/3) (L/a_o) (Phi/V_o) sqrt(Phi/R_inf)
struct FnCoefficients {
  double a;
  double b;
};

inline FnCoefficients fn_coefficients(const units::DiodeConfig& cfg,
                                      const units::Material& mat) {
  using namespace units::constants;
  const double a = std::sqrt(mat.mu * rydberg * cfg.v_o / mat.phi) /
                   (M_PI * (mat.mu + mat.phi));
  const double b = (4.0 / 3.0) * (cfg.l / bohr_radius) * (mat.phi / cfg.v_o) *
                   std::sqrt(mat.phi / rydberg);
  return {a, b};
}

/// Dimensioned exponent coefficient of the triangular-barrier law,
/// J ~ F^2 exp(-B/F):  B = (4/3) Phi^{3/2} / (a_o sqrt(R_inf))  [eV/nm].
/// (b/f in the dimensionless law equals B/F.)
inline double fn_exponent_coefficient(double phi) {
  using namespace units::constants;
  return (4.0 / 3.0) * phi * std::sqrt(phi) / (bohr_radius * std::sqrt(rydberg));
}

struct TransitionResult {
  double v_trans;  // [eV]
  int iterations;  // fixed-point updates performed
};

/// Anode potential at which the Fowler-Nordheim diode passes through the
/// degenerate root f = 2/3, j = 2/9 (half the Child-Langmuir limit):
///   V = 2 Phi (L/a_o) sqrt(Phi/R_inf) / ln(2 a(V)),
/// solved by fixed-point iteration to |dV| < 0.5 eV.
inline TransitionResult transition_voltage(double l_nm,
                                           const units::Material& mat,
                                           double guess_ev) {
  using namespace units::constants;
  if (!(guess_ev > 0.0))
    throw std::domain_error("transition_voltage: guess must be positive");
  const double numerator = 2.0 * mat.phi * (l_nm / bohr_radius) *
                           std::sqrt(mat.phi / rydberg);
  double v = guess_ev;
  for (int it = 1; it <= 100; ++it) {
    const double a = fn_coefficients(units::DiodeConfig(v, l_nm), mat).a;
    const double log_arg = 2.0 * a;
    if (!(log_arg > 1.0))
      throw std::runtime_error(
          "transition_voltage: ln(2a) <= 0, no transition for these parameters");
    const double v_next = numerator / std::log(log_arg);
    const double dv = std::abs(v_next - v);
    v = v_next;
    if (dv < 0.5) return {v, it};
  }
  throw std::runtime_error("transition_voltage: no convergence in 100 iterations");
}

// Schottky barrier lowering state at cathode field F.
struct SchottkyState {
  double field;       // F [eV/nm]
  double y;           // sqrt(alpha hbar c F) / Phi
  double phi_barrier; // (1-y) Phi [eV]
};

/// Largest field the image-charge correction tolerates: the barrier is
/// pulled down to the Fermi level at F_max = Phi^2 / (alpha hbar c).
inline double schottky_field_max(double phi) {
  using namespace units::constants;
  return phi * phi / (4.0 * q_image);
}

inline SchottkyState schottky(double field, double phi) {
  using namespace units::constants;
  if (!(field >= 0.0))
    throw std::domain_error("schottky: require F >= 0");
  if (field > schottky_field_max(phi))
    throw std::domain_error("schottky: field exceeds Phi^2/(alpha hbar c)");
  const double y = std::sqrt(4.0 * q_image * field) / phi;
  return {field, y, (1.0 - y) * phi};
}

enum class BarrierShape {
  standard,          // v(y) = 1 - y^2 (1 - ln(y)/3)
  feng_verboncoeur,  // v(y) = 1 - y^1.69
};

inline double nordheim_v(double y, BarrierShape shape) {
  if (y <= 0.0) return 1.0;
  switch (shape) {
    case BarrierShape::standard:
      return 1.0 - y * y * (1.0 - std::log(y) / 3.0);
    case BarrierShape::feng_verboncoeur:
      return 1.0 - std::pow(y, 1.69);
  }
  return 1.0;
}

// Nordheim t at y_o = e^{-1/2}; the full elliptic-integral t(y) is not
// evaluated anywhere in this library.
inline constexpr double nordheim_t = 1.061;

/// Field-dependent effective work function Phi_eff = Phi v(y)^{2/3}, the Phi
/// that makes the triangular-barrier exponent reproduce the image-charge one.
inline double effective_work_function(double phi, double field,
                                      BarrierShape shape = BarrierShape::standard) {
  const double y = schottky(field, phi).y;
  const double v = nordheim_v(y, shape);
  if (v < 0.0)
    throw std::domain_error("effective_work_function: v(y) < 0");
  return phi * std::pow(v, 2.0 / 3.0);
}

/// Prefactor of the triangular <-> image-charge equivalence:
///   C = (1/(4 Phi t^2)) sqrt(Phi_eff/mu) (mu + Phi_eff), t frozen at 1.061.
inline double c_scale_factor(const units::Material& mat, double field,
                             BarrierShape shape = BarrierShape::standard) {
  const double phi_eff = effective_work_function(mat.phi, field, shape);
  return std::sqrt(phi_eff / mat.mu) * (mat.mu + phi_eff) /
         (4.0 * mat.phi * nordheim_t * nordheim_t);
}

// Small-current space-charge correction j ~ j(1)/(1 + eps). eps_taylor is
// (4/3) j'(1) from the emission law itself; eps_exp_only and eps_scaled are
// the two printed approximations, reported for comparison (they agree with
// eps_taylor only at b = 0 and differ in prefactor otherwise).
struct EpsilonReport {
  double eps_taylor;   // (4/3)(2+b) a e^{-b}
  double eps_exp_only; // (8/3) a e^{-b}
  double eps_scaled;   // (1/3)(b+2) * J_FN(F)/J_CL = (3/4)(b+2) a e^{-b}
  double j1;           // j(1) = a e^{-b}
  bool small_current_regime; // j(1) <= 0.1
};

inline EpsilonReport epsilon_fn(const units::DiodeConfig& cfg,
                                const units::Material& mat) {
  const auto [a, b] = fn_coefficients(cfg, mat);
  const double j1 = a * std::exp(-b);
  return {(4.0 / 3.0) * (2.0 + b) * j1,
          (8.0 / 3.0) * j1,
          (3.0 / 4.0) * (2.0 + b) * j1,
          j1,
          j1 <= 0.1};
}

// One voltage sample of the space-charge / bare-emission comparison.
struct FnCurvePoint {
  double v;     // anode potential [eV]
  double j_fn;  // bare emission at F = V/L, no space charge [q/(nm^2 fs)]
  double j_sc;  // C * j * J_o, space-charge limited [q/(nm^2 fs)]
  double j_cl;  // Child-Langmuir density [q/(nm^2 fs)]
  double f;     // solved cathode field fraction
  double j;     // solved dimensionless current
  double a;     // coefficients actually used (effective Phi folded in)
  double b;
  std::optional<std::string> note; // set when the point failed
};

struct FnCurveOptions {
  bool use_phi_eff = false;                         // self-consistent Phi_eff(F)
  BarrierShape shape = BarrierShape::standard;      // v(y) model when enabled
  double c_factor = 1.0;                            // scaling of the solved j
  double fixed_point_tol = 1e-6;                    // relative, on Phi_eff
  int fixed_point_cap = 50;
};

/// Solve the diode over a voltage grid. With use_phi_eff the coefficients are
/// built from Phi_eff(F), F = f V/L, iterated to a fixed point (0.5 damping
/// kicks in if the iterate oscillates). Per-point failures are annotated and
/// the sweep continues.
inline std::vector<FnCurvePoint> space_charge_fn_curve(
    double l_nm, const units::Material& mat,
    const std::vector<double>& v_grid, const FnCurveOptions& opt = {}) {
  std::vector<FnCurvePoint> out;
  out.reserve(v_grid.size());
  for (const double v : v_grid) {
    FnCurvePoint pt{};
    pt.v = v;
    try {
      const units::DiodeConfig cfg(v, l_nm);
      const double j_o = units::j_scale(cfg);
      pt.j_cl = (4.0 / 9.0) * j_o;

      double phi_use = mat.phi;
      if (opt.use_phi_eff)
        phi_use = effective_work_function(mat.phi, v / l_nm, opt.shape);

      auto coeffs_for = [&](double phi) {
        return fn_coefficients(cfg, units::Material(mat.mu, phi));
      };

      auto ab = coeffs_for(phi_use);
      diode::SolvedState st =
          diode::solve(diode::FowlerNordheim{ab.a, ab.b});

      if (opt.use_phi_eff) {
        // Phi_eff depends on F = f V/L, f on (a,b): fixed point on Phi_eff.
        double phi_prev = phi_use;
        double delta_prev = 0.0;
        bool damped = false;
        for (int it = 0; it < opt.fixed_point_cap; ++it) {
          double phi_next =
              effective_work_function(mat.phi, st.f * v / l_nm, opt.shape);
          if (damped) phi_next = 0.5 * (phi_next + phi_prev);
          const double delta = phi_next - phi_prev;
          if (delta * delta_prev < 0.0) damped = true; // oscillation
          phi_prev = phi_next;
          delta_prev = delta;
          ab = coeffs_for(phi_next);
          st = diode::solve(diode::FowlerNordheim{ab.a, ab.b});
          if (std::abs(delta) <= opt.fixed_point_tol * phi_next) break;
          if (it == opt.fixed_point_cap - 1)
            throw std::runtime_error("Phi_eff fixed point did not converge");
        }
        phi_use = phi_prev;
      }

      // Bare emission at the vacuum field (f = 1), same barrier model.
      const auto ab_bare =
          opt.use_phi_eff
              ? coeffs_for(effective_work_function(mat.phi, v / l_nm, opt.shape))
              : ab;
      pt.j_fn = ab_bare.a * std::exp(-ab_bare.b) * j_o;
      pt.j_sc = opt.c_factor * st.j * j_o;
      pt.f = st.f;
      pt.j = st.j;
      pt.a = ab.a;
      pt.b = ab.b;
    } catch (const std::exception& e) {
      pt.note = e.what();
      pt.j_fn = pt.j_sc = pt.j_cl = std::numeric_limits<double>::quiet_NaN();
      pt.f = pt.j = pt.a = pt.b = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

} // namespace fn
} // namespace sce
