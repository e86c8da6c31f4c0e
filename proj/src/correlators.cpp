#include "casimir/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double pi2 = std::numbers::pi * std::numbers::pi;

// Relative detection threshold for a vanishing denominator [dt^2 - d^2]^2.
constexpr double singular_threshold = 1e-12;

struct Term {
  double value;
  bool singular;
};

// 1 / [dt^2 - d^2]^2 with the relative singularity test.
Term inverse_square(double dt2, double d) {
  const double factor = dt2 - d * d;
  const double denom = factor * factor;
  const double scale = std::max(dt2, d * d); // max(|dt|, |d|)^2
  if (denom < singular_threshold * scale * scale)
    return {0.0, true};
  return {1.0 / denom, false};
}

void validate_point(const SpacetimePair& p) {
  if (!(p.z > 0.0) || !(p.z_prime > 0.0))
    throw DomainError("correlator points must satisfy z > 0 and z' > 0");
}

} // namespace

double corr_single(const SpacetimePair& p) {
  validate_point(p);
  const double dt = p.t - p.t_prime;
  const Term term = inverse_square(dt * dt, p.z + p.z_prime);
  if (term.singular) {
    std::ostringstream msg;
    msg << "single-plate correlator singular: (t-t')^2 - (z+z')^2 = "
        << dt * dt - (p.z + p.z_prime) * (p.z + p.z_prime) << " (image light cone)";
    throw SingularityError(msg.str());
  }
  return term.value / pi2;
}

SeriesValue corr_dual(const SpacetimePair& p, double a, const SummationControl& control) {
  control.validate();
  if (!(a > 0.0))
    throw DomainError("plate separation a must be positive");
  validate_point(p);
  if (!(p.z < a) || !(p.z_prime < a))
    throw DomainError("correlator points must lie between the plates (z, z' < a)");

  const double dt = p.t - p.t_prime;
  const double dt2 = dt * dt;
  const double diff = p.z - p.z_prime;
  const double sum = p.z + p.z_prime;

  CompensatedSum total(corr_single(p) * pi2);

  auto term = [&](long n, bool translated) {
    const double shift = 2.0 * a * static_cast<double>(n);
    const Term t = inverse_square(dt2, (translated ? diff : sum) - shift);
    if (t.singular) {
      std::ostringstream msg;
      msg << "two-plate correlator singular at image n = " << n << " ("
          << (translated ? "z - z' - 2an" : "z + z' - 2an") << " family)";
      throw SingularityError(msg.str());
    }
    return t.value;
  };

  // Every image distance satisfies |x -+ 2an| >= 2a|n| - reach.
  const double reach = std::max(std::abs(diff), sum);
  auto tail_bound = [&](long n) {
    const double gap = 2.0 * a * static_cast<double>(n) - reach;
    if (gap <= 0.0 || gap * gap < 2.0 * dt2)
      return std::numeric_limits<double>::infinity();
    // Four terms per index, each <= 4 / (2at - reach)^4 once gap^2 >= 2 dt^2.
    return 4.0 * 4.0 / (3.0 * 2.0 * a * gap * gap * gap);
  };

  for (long n = 1; n <= control.n_max; ++n) {
    const double pair = term(n, true) + term(-n, true) + term(n, false) + term(-n, false);
    total.add(pair);
    const double tail = tail_bound(n);
    const double target = control.tol * total.value();
    if (pair <= target && tail <= target)
      return {total.value() / pi2, n, tail / pi2};
  }
  std::ostringstream msg;
  msg << "two-plate correlator: tail not certified below tol = " << control.tol
      << " within n_max = " << control.n_max;
  throw ConvergenceError(msg.str());
}

SeriesValue correlator(const SpacetimePair& p, const Geometry& geometry,
                       const SummationControl& control) {
  if (const auto* dual = std::get_if<DualPlate>(&geometry))
    return corr_dual(p, dual->a, control);
  return {corr_single(p), 0, 0.0};
}

MeanSquaredField mean_squared_field(double z, double omega_p) {
  if (!(z > 0.0))
    throw DomainError("distance z must be positive");
  if (!(omega_p > 0.0))
    throw DomainError("plasma frequency must be positive");
  const double x = omega_p * z;
  if (x >= 1.0)
    return {3.0 / (16.0 * pi2 * std::pow(z, 4)), FieldRegime::PerfectMirror, x};
  return {std::numbers::sqrt2 * omega_p / (32.0 * std::numbers::pi * z * z * z),
          FieldRegime::FiniteReflectivity, x};
}

} // namespace casimir
