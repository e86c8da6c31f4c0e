#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/oracle.hpp"
#include "casimir/variance.hpp"

namespace casimir::oracle {

namespace {

constexpr double derivative_tol = 1e-6;
constexpr double quadrature_tol = 1e-7;
constexpr double log_scale_tol = 1e-12;
constexpr double brute_force_tol = 1e-9;

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  long image_index(long max_abs) {
    const long k = std::uniform_int_distribution<long>(1, max_abs)(engine_);
    return std::bernoulli_distribution(0.5)(engine_) ? k : -k;
  }

private:
  std::mt19937_64 engine_;
};

// Largest b in (0, a - z0) keeping the image kernel pole-free (the predicate
// is monotone in b; the squares are nested).
double max_pole_free_length(double z0, double v, double a, long n, ImageFamily family) {
  double lo = 0.0;
  double hi = a - z0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pole_free(PathSegment{z0, mid, v}, a, n, family))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double relative(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

struct Accumulator {
  CheckResult check;
  int failures = 0;

  Accumulator(std::string name, double threshold) {
    check.name = std::move(name);
    check.threshold = threshold;
  }
  void record(double metric, const std::string& where) {
    if (!(metric <= check.threshold)) {
      if (failures++ == 0)
        check.detail = "first failure at " + where;
    }
    if (!(metric <= check.metric) || std::isnan(metric))
      check.metric = metric;
  }
  void fail(const std::string& why) {
    if (failures++ == 0)
      check.detail = why;
    check.metric = std::numeric_limits<double>::infinity();
  }
  CheckResult finish(int samples) {
    check.passed = failures == 0;
    if (check.passed) {
      std::ostringstream msg;
      msg << samples << " samples";
      check.detail = msg.str();
    }
    return check;
  }
};

std::string describe(std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream msg;
  msg.precision(10);
  bool first = true;
  for (const auto& [key, value] : fields) {
    msg << (first ? "" : ", ") << key << "=" << value;
    first = false;
  }
  return msg.str();
}

CheckResult check_derivative_reflected(Sampler& rng, int points, double sign) {
  Accumulator acc("derivative_F", derivative_tol);
  int taken = 0;
  while (taken < points) {
    const double v = rng.uniform(0.05, 0.6);
    const double z = rng.uniform(0.2, 2.0);
    const double zp = rng.uniform(0.2, 2.0);
    if (singular_distance(z, zp, v) < 0.02 * (z + zp) || std::abs(z - zp) < 0.05 * (z + zp))
      continue;
    ++taken;
    const auto steps = default_steps(singular_distance(z, zp, v));
    const auto report = deriv_check(
        [=](double x, double y) { return sign * antiderivative_reflected(x, y, v); },
        [=](double x, double y) { return one_plate_kernel(x, y, v); }, z, zp, steps);
    const auto where = describe({{"z", z}, {"z'", zp}, {"v", v}});
    if (!report.ok)
      acc.fail(report.diagnostic + " at " + where);
    else
      acc.record(report.relative_error, where);
  }
  return acc.finish(points);
}

CheckResult check_derivative_translated(Sampler& rng, int points) {
  Accumulator acc("derivative_G", derivative_tol);
  int taken = 0;
  while (taken < points) {
    const double a = rng.uniform(0.5, 2.0);
    const long n = rng.image_index(3);
    const double v = rng.uniform(0.05, 0.6);
    const double z = rng.uniform(0.05, 0.95) * a;
    const double zp = rng.uniform(0.05, 0.95) * a;
    const double dist = singular_distance(z, zp, v, a, n, ImageFamily::Translated);
    if (dist < 0.02 * a || std::abs(z - zp) < 0.02 * a)
      continue;
    ++taken;
    const auto report = deriv_check_translated(z, zp, v, a, n);
    const auto where = describe({{"z", z}, {"z'", zp}, {"v", v}, {"a", a}, {"n", double(n)}});
    if (!report.ok)
      acc.fail(report.diagnostic + " at " + where);
    else
      acc.record(report.relative_error, where);
  }
  return acc.finish(points);
}

CheckResult check_quadrature_one_plate(Sampler& rng, int sets, double sign) {
  Accumulator acc("quadrature_I", quadrature_tol);
  for (int i = 0; i < sets; ++i) {
    const double z0 = rng.uniform(0.2, 2.0);
    const double v = rng.log_uniform(0.005, 0.5);
    const double b = rng.uniform(0.05, 0.9) * 2.0 * v * z0 / (1.0 - v);
    const PathSegment seg{z0, b, v};
    const auto where = describe({{"z0", z0}, {"b", b}, {"v", v}});
    try {
      const double closed = sign * one_plate_integral(seg);
      acc.record(relative(closed, quad_I(seg).value), where);
    } catch (const Error& e) {
      acc.fail(std::string(e.what()) + " at " + where);
    }
  }
  return acc.finish(sets);
}

CheckResult check_quadrature_images(Sampler& rng, int sets, ImageFamily family, double sign) {
  const bool reflected = family == ImageFamily::Reflected;
  Accumulator acc(reflected ? "quadrature_I2A" : "quadrature_I2B", quadrature_tol);
  for (int i = 0; i < sets; ++i) {
    const double a = rng.uniform(0.5, 3.0);
    const double z0 = rng.uniform(0.05, 0.7) * a;
    const long n = rng.image_index(4);
    const double v = rng.log_uniform(0.005, 0.5);
    const double b = rng.uniform(0.05, 0.9) * max_pole_free_length(z0, v, a, n, family);
    const PathSegment seg{z0, b, v};
    const auto where = describe({{"z0", z0}, {"b", b}, {"v", v}, {"a", a}, {"n", double(n)}});
    try {
      const double closed = reflected ? sign * reflected_image_integral(seg, a, n)
                                      : translated_image_integral(seg, a, n);
      acc.record(relative(closed, quad_I2(seg, a, n, family).value), where);
    } catch (const Error& e) {
      acc.fail(std::string(e.what()) + " at " + where);
    }
  }
  return acc.finish(sets);
}

// closed - series must fall inside the analytic tail bracket, up to round-off.
double bracket_violation(const SeriesIdentity& id) {
  const double gap = id.closed_form - id.series;
  const double slack = 64.0 * 2.220446049250313e-16 * std::abs(id.closed_form);
  return std::max({0.0, id.tail_lower - slack - gap, gap - id.tail_upper - slack});
}

CheckResult check_series() {
  Accumulator acc("series_identities", 0.0);
  acc.record(bracket_violation(zeta2_identity()), "2 zeta(2)");
  for (double x : {0.25, 1.0 / 3.0, 0.5, 0.9})
    acc.record(bracket_violation(csc_identity(x)), describe({{"x", x}}));
  return acc.finish(5);
}

CheckResult check_log_scale(double sign) {
  Accumulator acc("log_scale_invariance", log_scale_tol);
  const LogScale unit{1.0};
  const LogScale scaled{7.3};
  const std::array<PathSegment, 3> segments = {
      PathSegment{1.0, 0.05, 0.01}, PathSegment{0.3, 0.2, 0.2}, PathSegment{0.4, 0.1, 0.05}};
  for (const auto& s : segments) {
    const auto where = describe({{"z0", s.z0}, {"b", s.b}, {"v", s.v}});
    acc.record(relative(one_plate_integral(s, scaled), sign * one_plate_integral(s, unit)), where);
    for (long n : {1L, -2L}) {
      acc.record(relative(reflected_image_integral(s, 2.0, n, scaled),
                          sign * reflected_image_integral(s, 2.0, n, unit)),
                 where);
      acc.record(relative(translated_image_integral(s, 2.0, n, scaled),
                          translated_image_integral(s, 2.0, n, unit)),
                 where);
    }
  }
  return acc.finish(static_cast<int>(segments.size()) * 5);
}

CheckResult check_correlator(Sampler& rng) {
  Accumulator acc("corr_dual_brute_force", brute_force_tol);
  constexpr int points = 5;
  for (int i = 0; i < points; ++i) {
    const double a = rng.uniform(0.5, 2.0);
    const SpacetimePair p{0.0, rng.uniform(0.05, 0.95) * a, 0.0, rng.uniform(0.05, 0.95) * a};
    const auto where = describe({{"z", p.z}, {"z'", p.z_prime}, {"a", a}});
    acc.record(relative(corr_dual(p, a).value, brute_force_corr_dual(p, a, 100'000)), where);
  }
  return acc.finish(points);
}

} // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport run_verification(const VerificationOptions& options) {
  if (options.quadrature_sets < 1 || options.derivative_points < 1)
    throw DomainError("verification needs at least one sample per check");
  const double sign = options.flip_reflected_sign ? -1.0 : 1.0;

  Sampler rng(options.seed);
  VerificationReport report;
  report.seed = options.seed;
  report.checks.push_back(check_derivative_reflected(rng, options.derivative_points, sign));
  report.checks.push_back(check_derivative_translated(rng, options.derivative_points));
  report.checks.push_back(check_quadrature_one_plate(rng, options.quadrature_sets, sign));
  report.checks.push_back(
      check_quadrature_images(rng, options.quadrature_sets, ImageFamily::Reflected, sign));
  report.checks.push_back(
      check_quadrature_images(rng, options.quadrature_sets, ImageFamily::Translated, sign));
  report.checks.push_back(check_series());
  report.checks.push_back(check_log_scale(sign));
  report.checks.push_back(check_correlator(rng));
  return report;
}

} // namespace casimir::oracle
