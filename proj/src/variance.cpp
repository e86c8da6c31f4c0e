#include "casimir/variance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/units.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

FluctuationResult finish(const Particle& p, double variance, RegimeFlags flags) {
  FluctuationResult r;
  r.regime = flags;
  r.regime.uncharged = p.charge_e == 0.0;
  r.variance = variance;
  r.rms_energy = std::sqrt(variance);
  // 1 eV carried by one elementary charge is 1 V.
  r.rms_voltage = p.charge_e == 0.0 ? 0.0 : r.rms_energy / std::abs(p.charge_e);
  return r;
}

void set_speed_flags(RegimeFlags& flags, double v, bool smallv_formula) {
  flags.small_v = v <= small_speed_limit;
  flags.outside_small_v = smallv_formula && !flags.small_v;
}

void set_length_flags(RegimeFlags& flags, const PathSegment& seg) {
  const ValidityWindow w = validity_window(seg);
  flags.small_b = seg.b <= 0.1 * seg.z0;
  flags.large_b = seg.b >= 10.0 * seg.z0;
  flags.below_window = w.below;
}

void check_consistent_speed(const Particle& p, const PathSegment& seg) {
  if (std::abs(p.speed - seg.v) > 1e-12 * seg.v) {
    std::ostringstream msg;
    msg << "particle speed " << p.speed << " differs from segment speed " << seg.v;
    throw DomainError(msg.str());
  }
}

void validate_between_plates(double z0, double a) {
  if (!(a > 0.0))
    throw DomainError("plate separation a must be positive");
  if (!(z0 > 0.0 && z0 < a))
    throw DomainError("start point must satisfy 0 < z0 < a (csc diverges at the plates)");
}

} // namespace

Particle Particle::from_kinetic(double charge_e, double mass_eV, double kinetic_eV) {
  Particle p{charge_e, mass_eV, units::speed_from_kinetic(kinetic_eV, mass_eV)};
  p.validate();
  return p;
}

Particle Particle::from_speed(double charge_e, double mass_eV, double speed) {
  Particle p{charge_e, mass_eV, speed};
  p.validate();
  return p;
}

Particle Particle::electron_with_kinetic(double kinetic_eV) {
  return from_kinetic(1.0, units::Constants::electron_mass, kinetic_eV);
}

double Particle::charge_natural() const { return units::charge_natural(charge_e); }

void Particle::validate() const {
  if (!(mass > 0.0))
    throw DomainError("particle mass must be positive");
  if (!(speed > 0.0 && speed < 1.0))
    throw DomainError("particle speed must satisfy 0 < v < 1");
  if (!std::isfinite(charge_e))
    throw DomainError("particle charge must be finite");
}

ValidityWindow validity_window(const PathSegment& seg) {
  seg.validate();
  ValidityWindow w;
  w.lower_bound = 2.0 * seg.v * seg.z0 / std::sqrt(3.0);
  w.upper_guidance = seg.z0;
  w.pole_entry_threshold = pole_entry_threshold(seg.z0, seg.v);
  w.below = seg.b < w.lower_bound;
  w.above = seg.b > 0.1 * seg.z0;
  w.inside = !w.below && !w.above;
  return w;
}

FluctuationResult variance_one_plate(const Particle& p, const PathSegment& seg) {
  p.validate();
  seg.validate();
  check_consistent_speed(p, seg);

  RegimeFlags flags;
  flags.exact = true;
  set_speed_flags(flags, seg.v, false);
  set_length_flags(flags, seg);
  if (p.charge_e == 0.0)
    return finish(p, 0.0, flags);

  const double q = p.charge_natural();
  const double v2 = seg.v * seg.v;
  const double variance = q * q * v2 * v2 * one_plate_integral(seg) / pi2;
  return finish(p, variance, flags);
}

FluctuationResult rms_one_plate_smallv(const Particle& p, double z0, std::optional<double> b) {
  p.validate();
  if (!(z0 > 0.0))
    throw DomainError("z0 must be positive");

  RegimeFlags flags;
  set_speed_flags(flags, p.speed, true);
  if (b)
    set_length_flags(flags, PathSegment{z0, *b, p.speed});

  const double rms = std::abs(p.charge_natural()) * p.speed / (2.0 * pi * z0);
  return finish(p, rms * rms, flags);
}

FluctuationResult variance_two_plate_exact(const Particle& p, const PathSegment& seg, double a,
                                           const SummationControl& control) {
  p.validate();
  seg.validate();
  control.validate();
  check_consistent_speed(p, seg);
  validate_between_plates(seg.z0, a);
  if (!(seg.end() < a))
    throw DomainError("segment must end before the second plate (z0 + b < a)");

  RegimeFlags flags;
  flags.exact = true;
  set_speed_flags(flags, seg.v, false);
  set_length_flags(flags, seg);

  const double v = seg.v;
  const double b = seg.b;
  // Every image plane sits at least 2a|n| - reach from any point pair.
  const double reach = 2.0 * seg.end();
  auto tail_bound = [&](long n) {
    const double gap = 2.0 * a * static_cast<double>(n) - reach;
    if (gap <= 0.0 || v * gap < 2.0 * b)
      return std::numeric_limits<double>::infinity();
    // Past this index each of the four kernels is below 16 / (9 v^4 gap^4) on
    // the square; integrate the envelope from n to infinity.
    return 64.0 * b * b / (9.0 * v * v * v * v * 6.0 * a * gap * gap * gap);
  };

  CompensatedSum total(one_plate_integral(seg));
  long n = 1;
  double tail = std::numeric_limits<double>::infinity();
  for (;; ++n) {
    if (n > control.n_max) {
      std::ostringstream msg;
      msg << "two-plate image sum not certified below tol = " << control.tol
          << " within n_max = " << control.n_max;
      throw ConvergenceError(msg.str());
    }
    const double pair = reflected_image_integral(seg, a, n) + reflected_image_integral(seg, a, -n) +
                        translated_image_integral(seg, a, n) +
                        translated_image_integral(seg, a, -n);
    total.add(pair);
    tail = tail_bound(n);
    const double target = control.tol * std::abs(total.value());
    if (std::abs(pair) <= target && tail <= target)
      break;
  }

  const double q = p.charge_natural();
  const double scale = q * q * v * v * v * v / pi2;
  FluctuationResult r = finish(p, scale * total.value(), flags);
  r.terms_used = n;
  r.tail_estimate = scale * tail;
  return r;
}

FluctuationResult variance_two_plate_smallv(const Particle& p, double z0, double a) {
  p.validate();
  validate_between_plates(z0, a);

  RegimeFlags flags;
  set_speed_flags(flags, p.speed, true);

  // Distance to the nearer plate keeps the z0 <-> a - z0 symmetry exact.
  const double d = std::min(z0, a - z0);
  const double csc = 1.0 / std::sin(pi * d / a);
  const double q = p.charge_natural();
  const double v = p.speed;
  const double variance = q * q * v * v / (12.0 * a * a) * (1.0 + 3.0 * csc * csc);
  return finish(p, variance, flags);
}

FluctuationResult variance_two_plate_smallv_series(const Particle& p, double z0, double a,
                                                   long terms) {
  p.validate();
  validate_between_plates(z0, a);
  if (terms < 1)
    throw DomainError("at least one image term is required");

  RegimeFlags flags;
  set_speed_flags(flags, p.speed, true);

  // sum over images, smallest terms first
  double images = 0.0;
  for (long n = terms; n >= 1; --n) {
    const double an = a * static_cast<double>(n);
    images += 1.0 / ((an - z0) * (an - z0)) + 1.0 / ((an + z0) * (an + z0)) + 2.0 / (an * an);
  }
  const double sum = 1.0 / (z0 * z0) + images;

  const double N = static_cast<double>(terms);
  const double tail = 1.0 / (a * (a * N - z0)) + 1.0 / (a * (a * N + z0)) + 2.0 / (a * a * N);

  const double q = p.charge_natural();
  const double v = p.speed;
  const double scale = q * q * v * v / (4.0 * pi2);
  FluctuationResult r = finish(p, scale * sum, flags);
  r.terms_used = terms;
  r.tail_estimate = scale * tail;
  return r;
}

SeriesIdentity csc_identity(double x, long terms) {
  if (!std::isfinite(x) || x == std::round(x))
    throw DomainError("csc identity needs non-integer x");
  if (!(static_cast<double>(terms) > std::abs(x) + 1.0))
    throw DomainError("need more terms than |x| + 1");

  SeriesIdentity id;
  id.terms = terms;
  for (long n = terms; n >= 1; --n) {
    const double nd = static_cast<double>(n);
    id.series += 1.0 / ((nd + x) * (nd + x)) + 1.0 / ((nd - x) * (nd - x));
  }
  const double s = std::sin(pi * x);
  id.closed_form = -1.0 / (x * x) + pi2 / (s * s);
  const double N = static_cast<double>(terms);
  id.tail_upper = 1.0 / (N + x) + 1.0 / (N - x);
  id.tail_lower = 1.0 / (N + 1.0 + x) + 1.0 / (N + 1.0 - x);
  return id;
}

SeriesIdentity zeta2_identity(long terms) {
  if (terms < 1)
    throw DomainError("at least one term is required");
  SeriesIdentity id;
  id.terms = terms;
  for (long n = terms; n >= 1; --n) {
    const double nd = static_cast<double>(n);
    id.series += 2.0 / (nd * nd);
  }
  id.closed_form = pi2 / 3.0;
  const double N = static_cast<double>(terms);
  id.tail_upper = 2.0 / N;
  id.tail_lower = 2.0 / (N + 1.0);
  return id;
}

} // namespace casimir
