#include "casimir/units.hpp"

#include <string>

#include "casimir/errors.hpp"

namespace casimir::units {

double length_to_natural(double length_nm) {
  if (!(length_nm > 0.0))
    throw DomainError("length must be positive, got " + std::to_string(length_nm) + " nm");
  return length_nm / Constants::hbar_c;
}

double natural_to_length(double length_natural) {
  if (!(length_natural > 0.0))
    throw DomainError("length must be positive, got " + std::to_string(length_natural) + " 1/eV");
  return length_natural * Constants::hbar_c;
}

double coordinate_to_natural(double coordinate_nm) { return coordinate_nm / Constants::hbar_c; }

double coordinate_to_length(double coordinate_natural) {
  return coordinate_natural * Constants::hbar_c;
}

double speed_from_kinetic(double kinetic_eV, double mass_eV) {
  if (!(kinetic_eV >= 0.0))
    throw DomainError("kinetic energy must be non-negative");
  if (!(mass_eV > 0.0))
    throw DomainError("mass must be positive");
  const double v = std::sqrt(2.0 * kinetic_eV / mass_eV);
  if (v >= 1.0)
    throw RegimeError("v = sqrt(2K/m) = " + std::to_string(v) +
                      " >= 1: non-relativistic kinematics invalid");
  return v;
}

double charge_natural(double charge_e) {
  return charge_e * Constants::elementary_charge_natural();
}

} // namespace casimir::units
