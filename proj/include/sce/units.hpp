#pragma once

// Emission unit system (eV, nm, fs, elementary charge q) and the handful of
// fundamental constants the whole library runs on. Everything internal is kept
// in these units; SI shows up only at I/O boundaries (A/cm^2 on current axes).

#include <cmath>
#include <stdexcept>

namespace sce {
namespace units {

namespace constants {

// Electron rest energy m*c^2 [eV].
inline constexpr double electron_mass_ev_c2 = 510999.0;

// Speed of light [nm/fs].
inline constexpr double speed_of_light = 299.792;

// Reduced Planck constant [eV*fs].
inline constexpr double hbar = 0.658212;

// Elementary charge in its own unit.
inline constexpr double unit_charge = 1.0;

// Rydberg energy [eV].
inline constexpr double rydberg = 13.6057;

// Fine structure constant.
inline constexpr double alpha_fs = 1.0 / 137.036;

// Bohr radius [nm].
inline constexpr double bohr_radius = 0.0529177;

// Vacuum permittivity [q^2 / (eV*nm)].
inline constexpr double eps0 = 5.52635e-2;

// Image-charge strength alpha*hbar*c/4 [eV*nm].
inline constexpr double q_image = 0.359991;

// Electron mass in emission mass units [eV*fs^2/nm^2], i.e. (m c^2)/c^2.
inline constexpr double electron_mass =
    electron_mass_ev_c2 / (speed_of_light * speed_of_light);

// One q/(nm^2 fs) expressed in A/cm^2.
inline constexpr double current_density_a_per_cm2 = 1.602177e10;

} // namespace constants

// Planar diode: anode potential energy V_o = q * (anode voltage) [eV] and
// anode-cathode gap L [nm].
struct DiodeConfig {
  double v_o; // [eV]
  double l;   // [nm]

  DiodeConfig(double v_o_, double l_) : v_o(v_o_), l(l_) {
    if (!(v_o > 0.0) || !(l > 0.0))
      throw std::domain_error("DiodeConfig: require V_o > 0 and L > 0");
  }
};

// Emitter material: chemical potential mu and work function Phi [eV].
struct Material {
  double mu;  // [eV]
  double phi; // [eV]

  Material(double mu_, double phi_) : mu(mu_), phi(phi_) {
    if (!(mu > 0.0) || !(phi > 0.0))
      throw std::domain_error("Material: require mu > 0 and Phi > 0");
  }
};

/// Scale current J_o = sqrt(2/m) eps0 V_o^{3/2} / (q L^2) in q/(nm^2 fs).
/// The Child-Langmuir density is (4/9)*J_o.
inline double j_scale(const DiodeConfig& cfg) {
  using namespace constants;
  return std::sqrt(2.0 / electron_mass) * eps0 * std::pow(cfg.v_o, 1.5) /
         (unit_charge * cfg.l * cfg.l);
}

/// Child-Langmuir current density (4/9)*J_o in q/(nm^2 fs).
inline double child_langmuir(const DiodeConfig& cfg) {
  return (4.0 / 9.0) * j_scale(cfg);
}

/// q/(nm^2 fs) -> A/cm^2.
inline double current_density_to_si(double j_emission) {
  if (!std::isfinite(j_emission))
    throw std::domain_error("current_density_to_si: non-finite input");
  return j_emission * constants::current_density_a_per_cm2;
}

/// A/cm^2 -> q/(nm^2 fs).
inline double current_density_from_si(double j_si) {
  if (!std::isfinite(j_si))
    throw std::domain_error("current_density_from_si: non-finite input");
  return j_si / constants::current_density_a_per_cm2;
}

} // namespace units
} // namespace sce
