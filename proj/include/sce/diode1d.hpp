#pragma once

// Dimensionless 1D diode core. The cathode field f = F*L/V_o and current
// density j = J/J_o live on the universal curve
//
//   j(f) = (1/9) * [2 + (2 - 3f) sqrt(1 + 3f)],   f in [0,1], j in [0,4/9],
//
// which is the closed form of the exact diode relation
//
//   (4j + f^2)^{1/2} (2j - f^2) + f^3 = 6 j^2.
//
// A square-root-free rearrangement 3f^2(1-f) - j(4-9j) = 0 exists but admits
// an unphysical root (f=1, j=4/9); it is kept only as a residual check.
// Everything here is a pure function of immutable inputs.

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

#include "sce/units.hpp"

namespace sce {
namespace diode {

// Float noise slightly above the no-space-charge endpoint f=1 is clamped.
inline constexpr double f_clamp_slack = 1e-12;

struct SolverError : std::runtime_error {
  double bracket_lo;
  double bracket_hi;
  SolverError(const std::string& msg, double lo, double hi)
      : std::runtime_error(msg + " [last bracket " + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]"),
        bracket_lo(lo), bracket_hi(hi) {}
};

/// Universal current-field relation j(f) on [0,1].
inline double universal_j(double f) {
  if (f > 1.0 && f <= 1.0 + f_clamp_slack) f = 1.0;
  if (!(f >= 0.0 && f <= 1.0))
    throw std::domain_error("universal_j: f outside [0,1]");
  return (2.0 + (2.0 - 3.0 * f) * std::sqrt(1.0 + 3.0 * f)) / 9.0;
}

struct RelationResiduals {
  double sqrt_form; // (4j+f^2)^{1/2}(2j-f^2) + f^3 - 6j^2
  double poly_form; // 3f^2(1-f) - j(4-9j)
};

/// Residuals of the exact diode relation and its square-root-free form.
inline RelationResiduals verify_exact_relation(double f, double j) {
  if (!std::isfinite(f) || !std::isfinite(j) || f < 0.0 || j < 0.0)
    throw std::domain_error("verify_exact_relation: f, j must be finite and >= 0");
  const double sqrt_form =
      std::sqrt(4.0 * j + f * f) * (2.0 * j - f * f) + f * f * f - 6.0 * j * j;
  const double poly_form = 3.0 * f * f * (1.0 - f) - j * (4.0 - 9.0 * j);
  return {sqrt_form, poly_form};
}

/// Large-current limit of the universal relation, exact rearrangement:
/// j = 4/9 - f^2 (2 + sqrt(3f+1)) / (1 + sqrt(3f+1))^2. Identical to
/// universal_j for all f in [0,1].
inline double large_current_exact_form(double f) {
  const double s = std::sqrt(3.0 * f + 1.0);
  return 4.0 / 9.0 - f * f * (2.0 + s) / ((1.0 + s) * (1.0 + s));
}

/// Leading small-f behaviour j ~ 4/9 - (3/4) f^2.
inline double large_current_approx(double f) {
  return 4.0 / 9.0 - 0.75 * f * f;
}

// ---------------------------------------------------------------------------
// Emission models: the j(f) law imposed by the cathode.

struct Linear {
  double a;
};
struct Quadratic {
  double a;
};
struct FowlerNordheim {
  double a;
  double b;
};

using EmissionModel = std::variant<Linear, Quadratic, FowlerNordheim>;

inline void validate(const EmissionModel& m) {
  std::visit(
      [](const auto& v) {
        if (!(v.a >= 0.0) || !std::isfinite(v.a))
          throw std::domain_error("EmissionModel: require a >= 0");
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, FowlerNordheim>) {
          if (!(v.b >= 0.0) || !std::isfinite(v.b))
            throw std::domain_error("EmissionModel: require b >= 0");
        }
      },
      m);
}

/// The model's emitted current density at cathode field f.
inline double model_current(const EmissionModel& m, double f) {
  struct Visitor {
    double f;
    double operator()(const Linear& v) const { return v.a * f; }
    double operator()(const Quadratic& v) const { return v.a * f * f; }
    double operator()(const FowlerNordheim& v) const {
      if (f <= 0.0) return 0.0;
      return v.a * f * f * std::exp(-v.b / f);
    }
  };
  return std::visit(Visitor{f}, m);
}

/// d j_model / d f.
inline double model_current_dfdf(const EmissionModel& m, double f) {
  struct Visitor {
    double f;
    double operator()(const Linear& v) const { return v.a; }
    double operator()(const Quadratic& v) const { return 2.0 * v.a * f; }
    double operator()(const FowlerNordheim& v) const {
      if (f <= 0.0) return 0.0;
      return v.a * std::exp(-v.b / f) * (2.0 * f + v.b);
    }
  };
  return std::visit(Visitor{f}, m);
}

/// d j_model / d a at fixed f (the cathode-efficiency sensitivity).
inline double partial_j_partial_a(const EmissionModel& m, double f) {
  if (!(f > 0.0 && f <= 1.0 + f_clamp_slack))
    throw std::domain_error("partial_j_partial_a: f outside (0,1]");
  struct Visitor {
    double f;
    double operator()(const Linear&) const { return f; }
    double operator()(const Quadratic&) const { return f * f; }
    double operator()(const FowlerNordheim& v) const {
      return f * f * std::exp(-v.b / f);
    }
  };
  return std::visit(Visitor{f}, m);
}

// Self-consistent state of the diode.
struct SolvedState {
  double f;
  double j;
};

namespace detail {

// Closed form for j = a f. The printed root
//   f = (1/2) { 1 + 3a^2 + (1-3a) sqrt(1 + (2/3)a + a^2) }
// subtracts nearly equal O(a^2) terms once a > 1/3; the rationalized
//   f = (8a/3) / (1 + 3a^2 + (3a-1) sqrt(1 + (2/3)a + a^2))
// is exact there with an all-positive denominator. Split at a = 1/3 where
// both give f = 2/3.
inline double linear_field(double a) {
  const double s = std::sqrt(1.0 + (2.0 / 3.0) * a + a * a);
  if (a <= 1.0 / 3.0)
    return 0.5 * (1.0 + 3.0 * a * a + (1.0 - 3.0 * a) * s);
  return (8.0 * a / 3.0) / (1.0 + 3.0 * a * a + (3.0 * a - 1.0) * s);
}

// Closed form for j = a f^2. The printed root
//   f = [1 - (1-2a) sqrt(4a+1)] / (6a^2)
// is 0/0 at a = 0; rationalizing gives
//   f = 2(3-4a) / (3 [1 + (1-2a) sqrt(4a+1)]),
// exact and cancellation-free for a <= 1/2 (where the printed form loses
// digits) while the printed form is benign for a >= 1/2. Both give 2/3 at
// the split.
inline double quadratic_field(double a) {
  const double s = std::sqrt(4.0 * a + 1.0);
  if (a < 0.5)
    return 2.0 * (3.0 - 4.0 * a) / (3.0 * (1.0 + (1.0 - 2.0 * a) * s));
  return (1.0 - (1.0 - 2.0 * a) * s) / (6.0 * a * a);
}

// Bracketed bisection for g(f) = universal_j(f) - j_model(f) on (0, 1].
// g is strictly decreasing for every model family (universal_j decreases,
// all model laws increase in f), so a sign bracket exists whenever a > 0.
// If the endpoints fail to bracket, scan 64 log-spaced points for a sign
// change before giving up.
inline double bisect_field(const EmissionModel& m) {
  const auto g = [&](double f) { return universal_j(f) - model_current(m, f); };
  double lo = 1e-12, hi = 1.0;
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (glo * ghi > 0.0) {
    bool found = false;
    double prev = lo, gprev = glo;
    for (int i = 1; i <= 64; ++i) {
      const double f = std::pow(10.0, -12.0 + 12.0 * i / 64.0);
      const double gf = g(f);
      if (gprev * gf <= 0.0) {
        lo = prev;
        hi = f;
        glo = gprev;
        found = true;
        break;
      }
      prev = f;
      gprev = gf;
    }
    if (!found)
      throw SolverError("solve: no sign change in g(f) on (0,1]", lo, hi);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0 || hi - lo < 1e-12) return mid;
    if (glo * gm > 0.0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  if (hi - lo < 1e-12) return 0.5 * (lo + hi);
  throw SolverError("solve: bisection iteration cap reached", lo, hi);
}

} // namespace detail

/// Solve the diode for the unique physical (f, j): closed form for the
/// linear and quadratic laws, bracketed bisection for Fowler-Nordheim.
inline SolvedState solve(const EmissionModel& m) {
  validate(m);
  struct Visitor {
    SolvedState operator()(const Linear& v) const {
      if (v.a == 0.0) return {1.0, 0.0};
      const double f = detail::linear_field(v.a);
      return {f, v.a * f};
    }
    SolvedState operator()(const Quadratic& v) const {
      if (v.a == 0.0) return {1.0, 0.0};
      const double f = detail::quadratic_field(v.a);
      return {f, v.a * f * f};
    }
    SolvedState operator()(const FowlerNordheim& v) const {
      if (v.a == 0.0) return {1.0, 0.0};
      const double f = detail::bisect_field(EmissionModel{v});
      return {f, v.a * f * f * std::exp(-v.b / f)};
    }
  };
  return std::visit(Visitor{}, m);
}

/// Small-emissivity asymptote. Linear and quadratic use their dedicated
/// denominators; anything else uses j(1) / (1 + (4/3) j'(1)).
inline double solve_small_a(const EmissionModel& m) {
  validate(m);
  struct Visitor {
    const EmissionModel* m;
    double operator()(const Linear& v) const {
      return v.a / (1.0 + (4.0 / 3.0) * v.a + (5.0 / 9.0) * v.a * v.a);
    }
    double operator()(const Quadratic& v) const {
      return v.a / (1.0 + (8.0 / 3.0) * v.a - (2.0 / 3.0) * v.a * v.a);
    }
    double operator()(const FowlerNordheim&) const {
      const double j1 = model_current(*m, 1.0);
      const double dj1 = model_current_dfdf(*m, 1.0);
      return j1 / (1.0 + (4.0 / 3.0) * dj1);
    }
  };
  return std::visit(Visitor{&m}, m);
}

/// Large-emissivity asymptote. Closed forms for linear and quadratic;
/// Fowler-Nordheim falls back on the small-f expansion at its solved field.
inline double solve_large_a(const EmissionModel& m) {
  validate(m);
  struct Visitor {
    const EmissionModel* m;
    double operator()(const Linear& v) const {
      if (v.a == 0.0) return 0.0;
      return 4.0 / (9.0 + 3.0 / (v.a * v.a));
    }
    double operator()(const Quadratic& v) const {
      if (v.a == 0.0) return 0.0;
      return 4.0 / (9.0 + 27.0 / (4.0 * v.a));
    }
    double operator()(const FowlerNordheim&) const {
      return large_current_approx(solve(*m).f);
    }
  };
  return std::visit(Visitor{&m}, m);
}

/// Leading-order field f ~ 1 - (4/3)a, valid for a << 1 (both the linear
/// and quadratic laws share it).
inline double small_f_leading(double a) {
  if (!(a >= 0.0))
    throw std::domain_error("small_f_leading: require a >= 0");
  return 1.0 - (4.0 / 3.0) * a;
}

/// Potential profile phi(y) of a solved state: the second integration
///   (4j sqrt(phi) + f^2)^{1/2} (2j sqrt(phi) - f^2) + f^3 = 6 j^2 y
/// solved for phi by bisection in u = sqrt(phi); the left side is monotone
/// increasing in u. phi(0) = 0 and phi(1) = 1 for states on the curve.
inline double potential_profile(const SolvedState& state, double y) {
  if (!(y >= 0.0 && y <= 1.0))
    throw std::domain_error("potential_profile: y outside [0,1]");
  const double f = state.f, j = state.j;
  if (y == 0.0) return 0.0;
  if (j <= 1e-300) return f * y; // vacuum profile (physical only at f = 1)
  const double target = 6.0 * j * j * y;
  const auto lhs = [&](double u) {
    return std::sqrt(4.0 * j * u + f * f) * (2.0 * j * u - f * f) + f * f * f;
  };
  double lo = 0.0, hi = 1.0;
  if (lhs(hi) < target) hi = 1.0 + 1e-9; // guard float noise at y = 1
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lhs(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  const double u = 0.5 * (lo + hi);
  return u * u;
}

/// Cathode field F [eV/nm] in the near-Child-Langmuir regime:
/// F^2 = sqrt(8 m q^2 / (9 eps0^2)) V_o^{1/2} (J_cl - J), F scales as
/// V_o^{1/4} at fixed current deficit.
inline double near_cl_field(const units::DiodeConfig& cfg, double j_current) {
  const double jcl = units::child_langmuir(cfg);
  if (j_current > jcl * (1.0 + 1e-12))
    throw std::domain_error("near_cl_field: J exceeds the Child-Langmuir limit");
  using namespace units::constants;
  const double coeff =
      std::sqrt(8.0 * electron_mass * unit_charge * unit_charge /
                (9.0 * eps0 * eps0));
  const double f2 =
      coeff * std::sqrt(cfg.v_o) * std::max(0.0, jcl - j_current);
  return std::sqrt(f2);
}

} // namespace diode
} // namespace sce
