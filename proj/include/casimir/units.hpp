#pragma once

#include <cmath>
#include <numbers>

// Natural Lorentz-Heaviside units: hbar = c = 1, energies in eV and lengths
// in 1/eV. Laboratory lengths (nm) are converted with hbar*c.
namespace casimir::units {

struct Constants {
  /// hbar*c in eV nm (CODATA 2018).
  static constexpr double hbar_c = 197.3269804;
  /// Fine-structure constant.
  static constexpr double alpha = 1.0 / 137.035999;
  /// Electron rest energy in eV (CODATA 2018).
  static constexpr double electron_mass = 510998.95;

  /// e = sqrt(4 pi alpha) in Lorentz-Heaviside units.
  static double elementary_charge_natural() {
    return std::sqrt(4.0 * std::numbers::pi * alpha);
  }
};

/// nm -> 1/eV. Throws DomainError for non-positive lengths.
double length_to_natural(double length_nm);

/// 1/eV -> nm. Throws DomainError for non-positive lengths.
double natural_to_length(double length_natural);

/// Signed coordinate (nm, or c*t in nm) -> 1/eV. No positivity check.
double coordinate_to_natural(double coordinate_nm);

/// 1/eV -> nm, signed.
double coordinate_to_length(double coordinate_natural);

/// Non-relativistic speed v = sqrt(2K/m) as a fraction of c.
/// Throws RegimeError when the result would reach c.
double speed_from_kinetic(double kinetic_eV, double mass_eV);

/// Charge in units of e -> Lorentz-Heaviside charge.
double charge_natural(double charge_e);

} // namespace casimir::units
