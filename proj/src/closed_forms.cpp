#include "casimir/closed_forms.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

// A corner is on the singular locus when a log argument is this small
// relative to the natural scale of the point.
constexpr double pole_touch_tol = 1e-10;

void validate_speed(double v) {
  if (!(v > min_exact_speed && v < max_exact_speed)) {
    std::ostringstream msg;
    msg << "exact antiderivatives need " << min_exact_speed << " < v < " << max_exact_speed
        << ", got v = " << v;
    if (v > 0.0 && v <= min_exact_speed)
      msg << "; use the small-v forms";
    throw DomainError(msg.str());
  }
}

void validate_scale(LogScale scale) {
  if (!(scale.ell > 0.0))
    throw DomainError("log scale ell must be positive");
}

// log(A^2/ell^2) - log(B^2/ell^2) given delta = A - B exactly.
//
// Near the diagonal A/B -> 1 and the difference of logs cancels; log1p of the
// exact relative gap keeps full precision there (and ell cancels analytically).
double log_difference(double A, double B, double delta, double ell) {
  const double x = delta / B;
  if (std::abs(x) <= 0.5)
    return 2.0 * std::log1p(x);
  return 2.0 * std::log(std::abs(A) / ell) - 2.0 * std::log(std::abs(B) / ell);
}

void check_pole(double arg, double scale, const char* which, double z, double zp) {
  if (std::abs(arg) < pole_touch_tol * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << which << " log argument vanishes at (z, z') = (" << z << ", " << zp
        << "): corner on the singular locus";
    throw PoleTouchError(msg.str());
  }
}

template <class Antiderivative>
double corners(Antiderivative&& f, double lo, double hi) {
  return f(hi, hi) - f(hi, lo) - f(lo, hi) + f(lo, lo);
}

void validate_image(double a, long n) {
  if (!(a > 0.0))
    throw DomainError("plate separation a must be positive");
  if (n == 0)
    throw DomainError("image index n must be nonzero");
}

} // namespace

void PathSegment::validate() const {
  if (!(z0 > 0.0))
    throw DomainError("segment start z0 must be positive");
  if (!(b > 0.0))
    throw DomainError("segment length b must be positive");
  if (!(v > 0.0 && v < 1.0))
    throw DomainError("speed must satisfy 0 < v < 1");
}

double antiderivative_reflected(double z, double zp, double v, LogScale scale) {
  validate_speed(v);
  validate_scale(scale);
  if (z == 0.0 || zp == 0.0)
    throw DomainError("F(z, z') is undefined at z = 0 or z' = 0");

  const double diff = z - zp;
  const double sum = z + zp;
  const double A = (1.0 + v) * zp + (v - 1.0) * z;
  const double B = (1.0 + v) * z + (v - 1.0) * zp;
  const double locus_scale = v * std::abs(sum) + std::abs(diff);
  check_pole(A, locus_scale, "F: (1+v)z' + (v-1)z", z, zp);
  check_pole(B, locus_scale, "F: (1+v)z + (v-1)z'", z, zp);

  // On the diagonal the log term is exactly zero and this reduces to 1/(16 v^2 z^2).
  const double L = log_difference(A, B, -2.0 * diff, scale.ell);
  const double zz = z * zp;
  const double bracket = 8.0 * v * zz + (1.0 - v * v) * diff * sum * L;
  return bracket / (128.0 * v * v * v * zz * zz);
}

double antiderivative_translated(double z, double zp, double v, double a, long n,
                                 LogScale scale) {
  validate_speed(v);
  validate_scale(scale);
  validate_image(a, n);

  const double nav = static_cast<double>(n) * a * v;
  const double diff = z - zp;
  const double A = -(1.0 + v) * diff + 2.0 * nav;
  const double B = (1.0 - v) * diff + 2.0 * nav;
  const double locus_scale = 2.0 * std::abs(nav) + std::abs(diff);
  check_pole(A, locus_scale, "G: (1+v)(z'-z) + 2nav", z, zp);
  check_pole(B, locus_scale, "G: (1-v)(z-z') + 2nav", z, zp);

  // Diagonal: 1 / (8 (nav)^2).
  const double L = log_difference(A, B, -2.0 * diff, scale.ell);
  const double bracket = 8.0 * nav + ((1.0 - v * v) * diff + 2.0 * nav * v) * L;
  return bracket / (64.0 * nav * nav * nav);
}

double pole_entry_threshold(double z0, double v) { return 2.0 * v * z0 / (1.0 - v); }

double one_plate_integral(const PathSegment& seg, LogScale scale) {
  seg.validate();
  try {
    return corners([&](double z, double zp) { return antiderivative_reflected(z, zp, seg.v, scale); },
                   seg.z0, seg.end());
  } catch (const PoleTouchError& e) {
    std::ostringstream msg;
    msg.precision(12);
    msg << e.what() << "; b = " << seg.b << " coincides with the pole-entry length 2 v z0/(1-v) = "
        << pole_entry_threshold(seg.z0, seg.v) << ", perturb b";
    throw PoleTouchError(msg.str());
  }
}

double one_plate_integral_smallv(const PathSegment& seg) {
  seg.validate();
  const double z0 = seg.z0;
  const double b = seg.b;
  const double z1 = seg.end();
  const double v2 = seg.v * seg.v;
  const double leading = (z0 * z0 + z1 * z1) / (8.0 * z0 * z0 * z1 * z1 * v2);
  const double s = 2.0 * z0 + b;
  const double constant =
      s * s * (2.0 * z0 * z0 + 2.0 * b * z0 - b * b) / (24.0 * b * b * z0 * z0 * z1 * z1);
  return leading + constant;
}

double reflected_image_integral(const PathSegment& seg, double a, long n, LogScale scale) {
  seg.validate();
  validate_image(a, n);
  const double shift = a * static_cast<double>(n);
  try {
    return corners(
        [&](double z, double zp) {
          return antiderivative_reflected(z - shift, zp - shift, seg.v, scale);
        },
        seg.z0, seg.end());
  } catch (const PoleTouchError& e) {
    throw PoleTouchError(std::string(e.what()) + " (reflected image n = " + std::to_string(n) + ")");
  }
}

double reflected_image_integral_smallv(const PathSegment& seg, double a, long n) {
  seg.validate();
  validate_image(a, n);
  // Distances from the image plane to the two ends of the segment.
  const double near = a * static_cast<double>(n) - seg.z0;
  const double far = near - seg.b;
  if (near == 0.0 || far == 0.0)
    throw DomainError("segment end coincides with image plane a*n");
  return (near * near + far * far) / (8.0 * seg.v * seg.v * near * near * far * far);
}

double translated_image_integral(const PathSegment& seg, double a, long n, LogScale scale) {
  seg.validate();
  validate_image(a, n);
  try {
    return corners(
        [&](double z, double zp) { return antiderivative_translated(z, zp, seg.v, a, n, scale); },
        seg.z0, seg.end());
  } catch (const PoleTouchError& e) {
    throw PoleTouchError(std::string(e.what()) + " (translated image n = " + std::to_string(n) + ")");
  }
}

double translated_image_integral_smallv(double v, double a, long n) {
  validate_image(a, n);
  if (!(v > 0.0 && v < 1.0))
    throw DomainError("speed must satisfy 0 < v < 1");
  const double nd = static_cast<double>(n);
  return 1.0 / (4.0 * a * a * v * v * nd * nd);
}

} // namespace casimir
