#pragma once

#include <variant>

#include "casimir/summation.hpp"

// Renormalized <E^z E^z> correlators for points on a common normal to one or
// two perfectly reflecting plates (plate at z = 0, optional plate at z = a).
// All arguments in natural units (1/eV); results in eV^4.
namespace casimir {

struct SpacetimePair {
  double t = 0.0;
  double z = 0.0;
  double t_prime = 0.0;
  double z_prime = 0.0;
};

struct SinglePlate {};

struct DualPlate {
  double a = 0.0; ///< plate separation
};

using Geometry = std::variant<SinglePlate, DualPlate>;

/// 1 / (pi^2 [(t - t')^2 - (z + z')^2]^2).
/// Throws SingularityError on the image light cone.
double corr_single(const SpacetimePair& p);

/// Two-plate correlator: the single-plate term plus both image families,
/// summed in +-n pairs until the integral-test tail bound certifies `control.tol`.
///
/// Throws SingularityError naming n and the family when a term's denominator
/// vanishes, ConvergenceError when n_max is reached uncertified.
SeriesValue corr_dual(const SpacetimePair& p, double a, const SummationControl& control = {});

SeriesValue correlator(const SpacetimePair& p, const Geometry& geometry,
                       const SummationControl& control = {});

enum class FieldRegime {
  PerfectMirror,      ///< omega_p z >= 1
  FiniteReflectivity, ///< omega_p z < 1
};

struct MeanSquaredField {
  double value = 0.0; ///< <E^2(z)> in eV^4
  FieldRegime regime = FieldRegime::PerfectMirror;
  double omega_p_z = 0.0;
};

/// <E^2(z)> near a single metal plate with plasma frequency omega_p.
/// Hard switch between the two asymptotic forms at omega_p z = 1; no
/// interpolation is attempted across it.
MeanSquaredField mean_squared_field(double z, double omega_p);

} // namespace casimir
