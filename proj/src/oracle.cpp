#include "casimir/oracle.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::oracle {

namespace {

// Kronrod 15-point abscissae (descending, last is the centre) and weights;
// the odd-indexed abscissae are the 7-point Gauss nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  double value;
  double error;
  double abs_value; ///< integral of |f|, for the round-off floor

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const Integrand1D& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  double abs_sum = wgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    kronrod += wgk[j] * (f1 + f2);
    abs_sum += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1)
      gauss += wg[j / 2] * (f1 + f2);
  }
  Panel p{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
  if (!std::isfinite(p.value) || !std::isfinite(p.error))
    throw ConvergenceError("quadrature: integrand not finite on the domain");
  return p;
}

QuadratureResult adaptive(const Integrand1D& f, double lo, double hi, double abs_tol,
                          double rel_tol, long& budget_used, long max_subdivisions) {
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, lo, hi);
  double value = first.value;
  double error = first.error;
  double abs_value = first.abs_value;
  panels.push(first);

  long local = 0;
  auto converged = [&] {
    const double target = std::max({abs_tol, rel_tol * std::abs(value), 50.0 * DBL_EPSILON * abs_value});
    return error <= target;
  };
  while (!converged()) {
    if (++budget_used > max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature: tolerance not met within max_subdivisions = " << max_subdivisions
          << " (estimated error " << error << ")";
      throw ConvergenceError(msg.str());
    }
    ++local;
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum in a fixed order so the result does not carry update drift.
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  QuadratureResult r;
  double magnitude = 0.0;
  for (const Panel& p : all) {
    r.value += p.value;
    r.error += p.error;
    magnitude += p.abs_value;
  }
  // round-off floor
  r.error = std::max(r.error, 50.0 * DBL_EPSILON * magnitude);
  r.subdivisions = local;
  return r;
}

// Lines alpha z + beta z' + gamma = 0 on which a kernel is singular.
struct Line {
  double alpha, beta, gamma;

  double eval(double z, double zp) const { return alpha * z + beta * zp + gamma; }
  double distance(double z, double zp) const {
    return std::abs(eval(z, zp)) / std::hypot(alpha, beta);
  }
};

// (z - z') -+ v (z + z' - 2 shift) for reflected, (z - z') -+ v (z - z' - 2 shift) for translated.
std::array<Line, 2> singular_lines(double v, double shift, ImageFamily family) {
  const double g = 2.0 * shift * v;
  if (family == ImageFamily::Reflected)
    return {Line{1.0 - v, -1.0 - v, g}, Line{1.0 + v, -1.0 + v, -g}};
  return {Line{1.0 - v, -(1.0 - v), g}, Line{1.0 + v, -(1.0 + v), -g}};
}

bool square_misses(const std::array<Line, 2>& lines, double lo, double hi) {
  const std::array<std::array<double, 2>, 4> corners = {{{lo, lo}, {lo, hi}, {hi, lo}, {hi, hi}}};
  for (const Line& line : lines) {
    bool pos = false;
    bool neg = false;
    for (const auto& c : corners) {
      const double s = line.eval(c[0], c[1]);
      if (s > 0.0)
        pos = true;
      else if (s < 0.0)
        neg = true;
      else
        return false;
    }
    if (pos && neg)
      return false;
  }
  return true;
}

void validate_image(double a, long n) {
  if (!(a > 0.0))
    throw DomainError("plate separation a must be positive");
  if (n == 0)
    throw DomainError("image index n must be nonzero");
}

} // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0))
    throw DomainError("quadrature tolerances must be non-negative and not both zero");
  if (max_subdivisions < 4)
    throw DomainError("max_subdivisions must be at least 4");
}

QuadratureResult integrate(const Integrand1D& f, double lo, double hi, const QuadratureSpec& spec) {
  spec.validate();
  long used = 0;
  return adaptive(f, lo, hi, spec.abs_tol, spec.rel_tol, used, spec.max_subdivisions);
}

QuadratureResult integrate_2d(const Integrand2D& f, double x0, double x1, double y0, double y1,
                              const QuadratureSpec& spec) {
  spec.validate();
  long used = 0;
  double worst_inner = 0.0;
  // Inner integrals are resolved ten times tighter than the outer target.
  const double inner_rel = spec.rel_tol * 0.1;
  const double inner_abs = spec.abs_tol * 0.1 / std::abs(x1 - x0);
  auto inner = [&](double x) {
    const QuadratureResult r = adaptive([&](double y) { return f(x, y); }, y0, y1, inner_abs,
                                        inner_rel, used, spec.max_subdivisions);
    worst_inner = std::max(worst_inner, r.error);
    return r.value;
  };
  QuadratureResult outer =
      adaptive(inner, x0, x1, spec.abs_tol, spec.rel_tol, used, spec.max_subdivisions);
  outer.error += std::abs(x1 - x0) * worst_inner;
  outer.subdivisions = used;
  return outer;
}

double one_plate_kernel(double z, double zp, double v) {
  const double d = z - zp;
  const double s = z + zp;
  const double den = d * d - v * v * s * s;
  return 1.0 / (den * den);
}

double image_kernel(double z, double zp, double v, double a, long n, ImageFamily family) {
  const double d = z - zp;
  const double w = (family == ImageFamily::Reflected ? z + zp : d) - 2.0 * a * static_cast<double>(n);
  const double den = d * d - v * v * w * w;
  return 1.0 / (den * den);
}

bool pole_free(const PathSegment& seg) {
  seg.validate();
  return square_misses(singular_lines(seg.v, 0.0, ImageFamily::Reflected), seg.z0, seg.end());
}

bool pole_free(const PathSegment& seg, double a, long n, ImageFamily family) {
  seg.validate();
  validate_image(a, n);
  return square_misses(singular_lines(seg.v, a * static_cast<double>(n), family), seg.z0,
                       seg.end());
}

QuadratureResult quad_I(const PathSegment& seg, const QuadratureSpec& spec) {
  if (!pole_free(seg)) {
    std::ostringstream msg;
    msg << "quadrature refused: kernel pole inside the square (b = " << seg.b
        << " >= b* = 2 v z0 / (1 - v) = " << 2.0 * seg.v * seg.z0 / (1.0 - seg.v) << ")";
    throw RefusalError(msg.str());
  }
  const double v = seg.v;
  return integrate_2d([v](double z, double zp) { return one_plate_kernel(z, zp, v); }, seg.z0,
                      seg.end(), seg.z0, seg.end(), spec);
}

QuadratureResult quad_I2(const PathSegment& seg, double a, long n, ImageFamily family,
                         const QuadratureSpec& spec) {
  if (!pole_free(seg, a, n, family)) {
    std::ostringstream msg;
    msg << "quadrature refused: "
        << (family == ImageFamily::Reflected ? "reflected" : "translated") << " image n = " << n
        << " puts the kernel pole inside the square";
    throw RefusalError(msg.str());
  }
  const double v = seg.v;
  return integrate_2d(
      [=](double z, double zp) { return image_kernel(z, zp, v, a, n, family); }, seg.z0,
      seg.end(), seg.z0, seg.end(), spec);
}

DerivativeReport deriv_check(const Integrand2D& antiderivative, const Integrand2D& kernel,
                             double z, double zp, std::span<const double> steps) {
  DerivativeReport report;
  if (steps.size() < 3) {
    report.diagnostic = "need at least three steps";
    return report;
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || (i > 0 && !(steps[i] < steps[i - 1]))) {
      report.diagnostic = "steps must be positive and strictly decreasing";
      return report;
    }
  }

  try {
    report.analytic = kernel(z, zp);
    for (double h : steps) {
      const double d = antiderivative(z + h, zp + h) - antiderivative(z + h, zp - h) -
                       antiderivative(z - h, zp + h) + antiderivative(z - h, zp - h);
      report.raw.push_back(d / (4.0 * h * h));
    }
  } catch (const std::exception& e) {
    report.diagnostic = e.what();
    return report;
  }

  // Neville tableau in h^2; keep the entry that agrees best with its
  // neighbours (Ridders).
  const std::size_t k = steps.size();
  std::vector<std::vector<double>> t(k, std::vector<double>(k, 0.0));
  double best_err = std::numeric_limits<double>::infinity();
  report.estimate = report.raw[0];
  for (std::size_t i = 0; i < k; ++i) {
    t[i][0] = report.raw[i];
    for (std::size_t m = 1; m <= i; ++m) {
      const double xa = steps[i - m] * steps[i - m];
      const double xb = steps[i] * steps[i];
      t[i][m] = (xa * t[i][m - 1] - xb * t[i - 1][m - 1]) / (xa - xb);
      const double err =
          std::max(std::abs(t[i][m] - t[i][m - 1]), std::abs(t[i][m] - t[i - 1][m - 1]));
      if (err <= best_err) {
        best_err = err;
        report.estimate = t[i][m];
      }
    }
  }

  const double d01 = std::abs(report.raw[0] - report.raw[1]);
  const double d12 = std::abs(report.raw[1] - report.raw[2]);
  report.observed_order =
      d12 == 0.0 ? std::numeric_limits<double>::infinity() : std::log(d01 / d12) / std::log(steps[0] / steps[1]);
  report.relative_error = std::abs(report.estimate - report.analytic) / std::abs(report.analytic);

  if (!std::isfinite(report.estimate) || !std::isfinite(report.analytic)) {
    report.diagnostic = "non-finite difference quotient";
  } else if (!(report.observed_order >= 1.5)) {
    std::ostringstream msg;
    msg << "central differences not converging (observed order " << report.observed_order << ")";
    report.diagnostic = msg.str();
  } else {
    report.ok = true;
  }
  return report;
}

std::vector<double> default_steps(double distance_to_singularity, int count) {
  std::vector<double> steps;
  double h = 0.05 * distance_to_singularity;
  for (int i = 0; i < count; ++i, h *= 0.5)
    steps.push_back(h);
  return steps;
}

double singular_distance(double z, double zp, double v) {
  double d = std::min(std::abs(z), std::abs(zp));
  for (const Line& line : singular_lines(v, 0.0, ImageFamily::Reflected))
    d = std::min(d, line.distance(z, zp));
  return d;
}

double singular_distance(double z, double zp, double v, double a, long n, ImageFamily family) {
  const double shift = a * static_cast<double>(n);
  double d = std::numeric_limits<double>::infinity();
  if (family == ImageFamily::Reflected)
    d = std::min(std::abs(z - shift), std::abs(zp - shift));
  for (const Line& line : singular_lines(v, shift, family))
    d = std::min(d, line.distance(z, zp));
  return d;
}

DerivativeReport deriv_check_reflected(double z, double zp, double v) {
  const auto steps = default_steps(singular_distance(z, zp, v));
  return deriv_check([v](double x, double y) { return antiderivative_reflected(x, y, v); },
                     [v](double x, double y) { return one_plate_kernel(x, y, v); }, z, zp, steps);
}

DerivativeReport deriv_check_translated(double z, double zp, double v, double a, long n) {
  const auto steps = default_steps(singular_distance(z, zp, v, a, n, ImageFamily::Translated));
  return deriv_check(
      [=](double x, double y) { return antiderivative_translated(x, y, v, a, n); },
      [=](double x, double y) { return image_kernel(x, y, v, a, n, ImageFamily::Translated); }, z,
      zp, steps);
}

double brute_force_corr_dual(const SpacetimePair& p, double a, long n_terms) {
  const double dt2 = (p.t - p.t_prime) * (p.t - p.t_prime);
  auto inv = [dt2](double d) {
    const double f = dt2 - d * d;
    return 1.0 / (f * f);
  };
  double sum = 0.0;
  for (long n = n_terms; n >= 1; --n) {
    for (long m : {n, -n}) {
      const double shift = 2.0 * a * static_cast<double>(m);
      sum += inv(p.z - p.z_prime - shift) + inv(p.z + p.z_prime - shift);
    }
  }
  sum += inv(p.z + p.z_prime);
  return sum / (std::numbers::pi * std::numbers::pi);
}

} // namespace casimir::oracle
