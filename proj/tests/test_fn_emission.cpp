#include "doctest.h"

#include <cmath>

#include "sce/fn_emission.hpp"

using namespace sce;
using namespace sce::units;
using namespace sce::fn;

TEST_CASE("dimensionless FN coefficients") {
  const Material mat(7.0, 4.0);
  const auto ab = fn_coefficients(DiodeConfig(1000.0, 1000.0), mat);
  // straight re-evaluation in long double
  const long double a_ref =
      std::sqrt(7.0L * 13.6057L * 1000.0L / 4.0L) / (M_PI * 11.0L);
  CHECK(ab.a == doctest::Approx(static_cast<double>(a_ref)).epsilon(1e-12));
  CHECK(ab.a == doctest::Approx(4.4651588).epsilon(1e-7));

  const long double b_ref = (4.0L / 3.0L) * (1000.0L / 0.0529177L) *
                            (4.0L / 1000.0L) * std::sqrt(4.0L / 13.6057L);
  CHECK(ab.b == doctest::Approx(static_cast<double>(b_ref)).epsilon(1e-12));

  // doubling V_o: a grows by sqrt(2), b halves
  const auto ab2 = fn_coefficients(DiodeConfig(2000.0, 1000.0), mat);
  CHECK(ab2.a / ab.a == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(ab2.b / ab.b == doctest::Approx(0.5).epsilon(1e-13));

  // homogeneity over a grid: a ~ V^{1/2}, b ~ L/V
  for (double k : {3.0, 10.0, 40.0}) {
    const auto abv = fn_coefficients(DiodeConfig(1000.0 * k, 1000.0), mat);
    const auto abl = fn_coefficients(DiodeConfig(1000.0, 1000.0 * k), mat);
    CHECK(abv.a / ab.a == doctest::Approx(std::sqrt(k)).epsilon(1e-12));
    CHECK(abv.b / ab.b == doctest::Approx(1.0 / k).epsilon(1e-12));
    CHECK(abl.b / ab.b == doctest::Approx(k).epsilon(1e-12));
    CHECK(abl.a == doctest::Approx(ab.a));
  }
}

TEST_CASE("dimensioned FN exponent coefficient reproduces the tabulated value") {
  // 4/3 Phi^{3/2} / (a_o sqrt(R_inf)) at the copper-like work function
  CHECK(fn_exponent_coefficient(4.5) == doctest::Approx(65.2073).epsilon(3e-6));
  // b/f equals B L / (V f) = B / F
  const Material mat(7.0, 4.5);
  const DiodeConfig cfg(2000.0, 500.0);
  const auto ab = fn_coefficients(cfg, mat);
  const double f = 0.37;
  CHECK(ab.b / f ==
        doctest::Approx(fn_exponent_coefficient(4.5) / (f * cfg.v_o / cfg.l))
            .epsilon(1e-12));
}

TEST_CASE("transition voltage worked example") {
  const Material mat(7.0, 4.0);
  const auto res = transition_voltage(1000.0, mat, 10000.0);
  CHECK(std::abs(res.v_trans - 21953.0) < 1.0);
  CHECK(res.iterations >= 3);
  CHECK(res.iterations <= 12);

  // fixed point: one more update moves V by less than the tolerance
  const double a = fn_coefficients(DiodeConfig(res.v_trans, 1000.0), mat).a;
  const double numerator = 2.0 * mat.phi * (1000.0 / constants::bohr_radius) *
                           std::sqrt(mat.phi / constants::rydberg);
  CHECK(std::abs(numerator / std::log(2.0 * a) - res.v_trans) < 0.5);

  // the solved state at V_trans is the degenerate half-limit root
  const auto ab = fn_coefficients(DiodeConfig(res.v_trans, 1000.0), mat);
  const auto st = diode::solve(diode::FowlerNordheim{ab.a, ab.b});
  CHECK(std::abs(st.f - 2.0 / 3.0) < 1e-3);
  CHECK(std::abs(st.j - 2.0 / 9.0) < 1e-3);
}

TEST_CASE("transition voltage basin and monotonicity") {
  const Material mat(7.0, 4.0);
  const auto ref = transition_voltage(1000.0, mat, 10000.0);
  for (double guess : {5000.0, 20000.0, 50000.0}) {
    const auto r = transition_voltage(1000.0, mat, guess);
    CHECK(std::abs(r.v_trans - ref.v_trans) < 1.0);
  }
  // doubling the gap raises the transition voltage
  const auto r2 = transition_voltage(2000.0, mat, 20000.0);
  CHECK(r2.v_trans > 1.8 * ref.v_trans);
  // lower work function lowers it
  const auto rphi2 = transition_voltage(1000.0, Material(7.0, 2.0), 10000.0);
  CHECK(rphi2.v_trans < ref.v_trans);
  CHECK_THROWS_AS(transition_voltage(1000.0, mat, -5.0), std::domain_error);
}

TEST_CASE("Schottky barrier lowering") {
  const auto zero = schottky(0.0, 4.0);
  CHECK(zero.y == 0.0);
  CHECK(zero.phi_barrier == 4.0);

  const auto s = schottky(1.0, 4.0);
  CHECK(s.y == doctest::Approx(std::sqrt(1.439964) / 4.0).epsilon(1e-12));
  CHECK(s.y == doctest::Approx(0.30000).epsilon(1e-4));
  CHECK(s.phi_barrier == doctest::Approx(4.0 * (1.0 - s.y)).epsilon(1e-13));

  // a 10 eV/nm field pushes a 3.8 eV barrier essentially to the Fermi level
  const auto edge = schottky(10.0, 3.8);
  CHECK(edge.y == doctest::Approx(1.0).epsilon(2e-3));
  CHECK_THROWS_AS(schottky(10.0, 3.7), std::domain_error);
  CHECK_THROWS_AS(schottky(-1.0, 4.0), std::domain_error);
}

TEST_CASE("effective work function") {
  CHECK(effective_work_function(4.0, 0.0) == doctest::Approx(4.0).epsilon(1e-14));

  // long-double re-evaluation of the full chain at Phi = 4, F = 3
  const long double y = std::sqrt(3.0L * 1.439964L) / 4.0L;
  const long double v = 1.0L - y * y * (1.0L - std::log(y) / 3.0L);
  const long double ref = 4.0L * std::pow(v, 2.0L / 3.0L);
  CHECK(effective_work_function(4.0, 3.0) ==
        doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
  CHECK(effective_work_function(4.0, 3.0) == doctest::Approx(3.066053).epsilon(1e-6));

  // the power-law barrier shape vanishes at the maximum field
  const double fmax = schottky_field_max(4.0);
  CHECK(effective_work_function(4.0, fmax, BarrierShape::feng_verboncoeur) ==
        doctest::Approx(0.0).epsilon(1e-10));

  // Phi_eff <= Phi with equality only at F = 0, both shapes
  for (const auto shape :
       {BarrierShape::standard, BarrierShape::feng_verboncoeur}) {
    for (double f = 0.25; f < 10.0; f += 0.25) {
      if (f > fmax) break;
      CHECK(effective_work_function(4.0, f, shape) < 4.0);
    }
  }
}

TEST_CASE("triangular/image-charge prefactor") {
  const Material copper(7.0, 4.5);
  // long-double re-evaluation
  const long double y = std::sqrt(3.0L * 1.439964L) / 4.5L;
  const long double v = 1.0L - y * y * (1.0L - std::log(y) / 3.0L);
  const long double phi_eff = 4.5L * std::pow(v, 2.0L / 3.0L);
  const long double c_ref = std::sqrt(phi_eff / 7.0L) * (7.0L + phi_eff) /
                            (4.0L * 4.5L * 1.061L * 1.061L);
  CHECK(c_scale_factor(copper, 3.0) ==
        doctest::Approx(static_cast<double>(c_ref)).epsilon(1e-12));
  CHECK(c_scale_factor(copper, 3.0) == doctest::Approx(0.379890).epsilon(1e-5));

  // prefactor sanity: at zero field and mu = Phi the formula collapses to
  // (1/2) / t^2
  const Material symmetric(5.0, 5.0);
  CHECK(c_scale_factor(symmetric, 0.0) ==
        doctest::Approx(0.5 / (nordheim_t * nordheim_t)).epsilon(1e-13));

  // decreasing in field over the working range
  double prev = 1e9;
  for (double f = 1.0; f <= 6.0; f += 0.5) {
    const double c = c_scale_factor(copper, f);
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("small-current space-charge correction") {
  const Material mat(7.0, 4.0);
  // reported forms keep their exact algebraic relation
  const auto rep = epsilon_fn(DiodeConfig(1000.0, 1000.0), mat);
  const auto ab = fn_coefficients(DiodeConfig(1000.0, 1000.0), mat);
  CHECK(rep.eps_taylor / rep.eps_exp_only ==
        doctest::Approx((2.0 + ab.b) / 2.0).epsilon(1e-12));
  CHECK(rep.eps_scaled / rep.eps_taylor == doctest::Approx(9.0 / 16.0).epsilon(1e-12));
  CHECK(rep.j1 == doctest::Approx(ab.a * std::exp(-ab.b)).epsilon(1e-13));
  CHECK(rep.small_current_regime);

  // scaling: V_o -> 4 V_o at fixed F = V_o/L doubles the correction
  const auto r4 = epsilon_fn(DiodeConfig(4000.0, 4000.0), mat);
  CHECK(r4.eps_taylor / rep.eps_taylor == doctest::Approx(2.0).epsilon(1e-10));

  // vanishing emission strength
  const auto tiny = epsilon_fn(DiodeConfig(100.0, 4000.0), mat);
  CHECK(tiny.eps_taylor < 1e-100);

  // out of regime: strong emission at a thin gap
  const auto strong = epsilon_fn(DiodeConfig(1000.0, 1.0), mat);
  CHECK_FALSE(strong.small_current_regime);
}

TEST_CASE("space-charge FN curve, triangular barrier") {
  const Material mat(7.0, 2.0);
  const double l = 1000.0;
  const auto vt = transition_voltage(l, mat, 10000.0);

  const auto curve = space_charge_fn_curve(
      l, mat, {1500.0, 3000.0, 6000.0, vt.v_trans, 20000.0, 1e5, 1e6}, {});
  for (const auto& p : curve) CHECK_FALSE(p.note.has_value());

  // negligible space charge at low voltage
  CHECK(curve[0].j_sc / curve[0].j_fn > 0.99);
  CHECK(curve[0].j_sc / curve[0].j_fn <= 1.0);
  // the degenerate root sits at the transition voltage
  CHECK(std::abs(curve[3].j - 2.0 / 9.0) < 1e-3);
  CHECK(std::abs(curve[3].f - 2.0 / 3.0) < 1e-3);
  // approach to the space-charge limit at high voltage
  CHECK(curve.back().j_sc / curve.back().j_cl == doctest::Approx(1.0).epsilon(0.02));

  // pointwise bounds and monotonicity
  double prev = -1.0;
  for (const auto& p : curve) {
    CHECK(p.j_sc <= std::min(p.j_fn, p.j_cl) * (1.0 + 1e-9));
    CHECK(p.j_sc > prev);
    prev = p.j_sc;
  }

  // the applied scale factor is linear in the output
  fn::FnCurveOptions half;
  half.c_factor = 0.5;
  const auto scaled = space_charge_fn_curve(l, mat, {6000.0}, half);
  CHECK(scaled[0].j_sc == doctest::Approx(0.5 * curve[2].j_sc).epsilon(1e-13));
}

TEST_CASE("space-charge FN curve with self-consistent effective work function") {
  const Material mat(7.0, 4.0);
  FnCurveOptions opt;
  opt.use_phi_eff = true;
  opt.shape = BarrierShape::feng_verboncoeur;
  opt.c_factor = 0.5;

  // fields stay below the Schottky ceiling on this grid; the fixed point
  // must converge everywhere (the curve throws into the note otherwise)
  std::vector<double> grid;
  for (double v = 3000.0; v <= 9500.0; v += 500.0) grid.push_back(v);
  const auto curve = space_charge_fn_curve(1000.0, mat, grid, opt);
  double prev = -1.0;
  for (const auto& p : curve) {
    CHECK_FALSE(p.note.has_value());
    CHECK(p.j_sc > prev);
    prev = p.j_sc;
    // the effective barrier raises the current against the bare-Phi solve
    const auto bare = space_charge_fn_curve(1000.0, mat, {p.v}, {})[0];
    CHECK(p.j >= bare.j);
  }

  // a field beyond the Schottky ceiling is annotated, not fatal
  const auto broken = space_charge_fn_curve(1000.0, mat, {4000.0, 4e5}, opt);
  CHECK_FALSE(broken[0].note.has_value());
  CHECK(broken[1].note.has_value());
  CHECK(std::isnan(broken[1].j_sc));
}

TEST_CASE("phi_eff fixed point converges across a parameter grid") {
  FnCurveOptions opt;
  opt.use_phi_eff = true;
  for (double phi : {2.0, 3.0, 4.5}) {
    const Material mat(7.0, phi);
    for (double l : {500.0, 1000.0, 2000.0}) {
      // keep the bare field under the Schottky ceiling
      const double vmax = 0.8 * schottky_field_max(phi) * l;
      for (double v : {0.05 * vmax, 0.3 * vmax, 0.9 * vmax}) {
        const auto pt = space_charge_fn_curve(l, mat, {v}, opt)[0];
        CHECK_FALSE(pt.note.has_value()); // would carry the cap-exceeded error
      }
    }
  }
}
