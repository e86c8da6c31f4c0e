#pragma once

#include <optional>

#include "casimir/closed_forms.hpp"
#include "casimir/summation.hpp"

// Kinetic-energy (equivalently voltage) fluctuations of a charge crossing the
// segment [z0, z0 + b] at constant speed, from the plate-induced correlator.
// Inputs in natural units; variances in eV^2, rms energies in eV, rms
// voltages in volts.
namespace casimir {

struct Particle {
  double charge_e = 1.0; ///< charge in units of e
  double mass = 0.0;     ///< rest energy, eV
  double speed = 0.0;    ///< v / c

  /// Speed derived from kinetic energy K = m v^2 / 2.
  static Particle from_kinetic(double charge_e, double mass_eV, double kinetic_eV);
  static Particle from_speed(double charge_e, double mass_eV, double speed);

  /// Particle with the standard electron mass and unit charge.
  static Particle electron_with_kinetic(double kinetic_eV);

  double charge_natural() const;
  double kinetic_energy() const { return 0.5 * mass * speed * speed; }

  void validate() const;
};

struct RegimeFlags {
  bool exact = false;           ///< computed from the exact corner combination
  bool small_v = false;         ///< v <= 0.1
  bool small_b = false;         ///< b <= 0.1 z0
  bool large_b = false;         ///< b >= 10 z0
  bool below_window = false;    ///< b below 2 v z0 / sqrt(3); small-v result unreliable
  bool outside_small_v = false; ///< small-v formula evaluated above v = 0.1
  bool uncharged = false;
};

struct FluctuationResult {
  double variance = 0.0;    ///< <(dU)^2>, eV^2
  double rms_energy = 0.0;  ///< eV
  double rms_voltage = 0.0; ///< volts
  RegimeFlags regime;
  long terms_used = 0;
  double tail_estimate = 0.0; ///< eV^2
};

/// Speed above which the small-v operations flag their result.
inline constexpr double small_speed_limit = 0.1;

/// q^2 v^4 I / pi^2 for a single plate.
FluctuationResult variance_one_plate(const Particle& p, const PathSegment& seg);

/// rms energy q v / (2 pi z0), independent of b inside the validity window.
/// When `b` is given, the window flags are filled in.
FluctuationResult rms_one_plate_smallv(const Particle& p, double z0,
                                       std::optional<double> b = std::nullopt);

struct ValidityWindow {
  double lower_bound = 0.0;          ///< 2 v z0 / sqrt(3)
  double upper_guidance = 0.0;       ///< z0 (b should stay well below it)
  double pole_entry_threshold = 0.0; ///< 2 v z0 / (1 - v)
  bool below = false;
  bool inside = false; ///< lower_bound <= b <= 0.1 z0
  bool above = false;  ///< b > 0.1 z0
};

ValidityWindow validity_window(const PathSegment& seg);

/// Exact two-plate variance: one-plate term plus the primed sum of
/// I_2A(n) + I_2B(n), paired +-n and certified by a far-image tail bound.
/// Requires z0 + b < a.
FluctuationResult variance_two_plate_exact(const Particle& p, const PathSegment& seg, double a,
                                           const SummationControl& control = {});

/// Closed form (q^2 v^2 / 12 a^2) [1 + 3 csc^2(pi z0 / a)]; the one-plate term is
/// already contained in it.
FluctuationResult variance_two_plate_smallv(const Particle& p, double z0, double a);

/// The same small-v, small-b two-plate variance summed term by term over
/// 0 < |n| <= terms (one-plate term plus 1/(4v^2(an - z0)^2) + 1/(4a^2v^2n^2)
/// per image). tail_estimate holds the integral-test upper bound on the
/// neglected part, so the closed form lies in [variance, variance + tail].
FluctuationResult variance_two_plate_smallv_series(const Particle& p, double z0, double a,
                                                   long terms = 100'000);

struct SeriesIdentity {
  double series = 0.0;      ///< truncated sum
  double closed_form = 0.0; ///< exact value
  double tail_lower = 0.0;  ///< closed_form - series is bracketed by
  double tail_upper = 0.0;  ///< [tail_lower, tail_upper]
  long terms = 0;
};

/// sum_{n>=1} [1/(n+x)^2 + 1/(n-x)^2] = -1/x^2 + pi^2 csc^2(pi x).
/// Throws DomainError for integer x.
SeriesIdentity csc_identity(double x, long terms = 10'000);

/// sum'_{n} 1/n^2 = 2 zeta(2) = pi^2 / 3.
SeriesIdentity zeta2_identity(long terms = 10'000);

} // namespace casimir
