#include "doctest.h"

#include <cmath>

#include "sce/units.hpp"

using namespace sce::units;
using namespace sce::units::constants;

TEST_CASE("constant table is self-consistent") {
  // Bohr radius from hbar/(alpha m c); m c = (m c^2)/c
  const double a_o = hbar * speed_of_light / (alpha_fs * electron_mass_ev_c2);
  CHECK(std::abs(a_o / bohr_radius - 1.0) < 5e-6);
  // image-charge strength alpha hbar c / 4
  const double q = alpha_fs * hbar * speed_of_light / 4.0;
  CHECK(std::abs(q / q_image - 1.0) < 5e-6);
  // permittivity from q^2/(4 pi alpha hbar c)
  const double e0 = 1.0 / (4.0 * M_PI * alpha_fs * hbar * speed_of_light);
  CHECK(std::abs(e0 / eps0 - 1.0) < 5e-6);
}

TEST_CASE("scale current matches an independent SI evaluation") {
  // Child-Langmuir in SI for V = 1 V, d = 1 nm, converted to q/(nm^2 fs).
  const double e_si = 1.602176634e-19;      // C
  const double me_si = 9.1093837015e-31;    // kg
  const double eps0_si = 8.8541878128e-12;  // F/m
  const double j_o_si =
      std::sqrt(2.0 * e_si / me_si) * eps0_si * 1.0 / (1e-9 * 1e-9); // A/m^2
  const double j_o_emission = j_o_si * 1e-33 / e_si;

  const DiodeConfig cfg(1.0, 1.0);
  CHECK(std::abs(j_scale(cfg) / j_o_emission - 1.0) < 1e-5);
  CHECK(j_scale(cfg) == doctest::Approx(3.2776562e-2).epsilon(1e-6));
  CHECK(child_langmuir(cfg) == doctest::Approx(4.0 / 9.0 * j_scale(cfg)));

  const DiodeConfig kv(1000.0, 1000.0);
  CHECK(j_scale(kv) == doctest::Approx(1.0364859e-3).epsilon(1e-6));
}

TEST_CASE("scale current scaling laws") {
  const DiodeConfig base(3.0, 7.0);
  const DiodeConfig double_gap(3.0, 14.0);
  CHECK(j_scale(base) / j_scale(double_gap) == doctest::Approx(4.0).epsilon(1e-13));

  for (double k : {2.0, 5.0, 100.0}) {
    const DiodeConfig scaled(3.0 * k, 7.0);
    CHECK(j_scale(scaled) / j_scale(base) ==
          doctest::Approx(std::pow(k, 1.5)).epsilon(1e-12));
  }
  // monotone in V_o, decreasing in L
  CHECK(j_scale(DiodeConfig(4.0, 7.0)) > j_scale(base));
  CHECK(j_scale(DiodeConfig(3.0, 8.0)) < j_scale(base));
}

TEST_CASE("current density unit conversion") {
  CHECK(current_density_to_si(0.0) == 0.0);
  CHECK(current_density_to_si(1.0) == doctest::Approx(1.602177e10));
  CHECK(current_density_to_si(1e-10) == doctest::Approx(1.602177).epsilon(1e-12));
  for (double j : {1e-7, 0.3, 42.0}) {
    CHECK(current_density_from_si(current_density_to_si(j)) ==
          doctest::Approx(j).epsilon(1e-15));
  }
  CHECK_THROWS_AS(current_density_to_si(std::nan("")), std::domain_error);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(DiodeConfig(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(DiodeConfig(1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(Material(-1.0, 4.0), std::domain_error);
  CHECK_THROWS_AS(Material(7.0, 0.0), std::domain_error);
}
