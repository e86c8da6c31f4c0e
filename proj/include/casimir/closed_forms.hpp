#pragma once

// Exact double integrals of the worldline kernels
//
//   1 / [(z - z')^2 - v^2 (z + z' - 2an)^2]^2   (reflected images, n = 0 is the plate)
//   1 / [(z - z')^2 - v^2 (z - z' - 2an)^2]^2   (translated images)
//
// over the square [z0, z0 + b]^2, obtained from closed-form antiderivatives
// F and G with d^2/dz dz' F = kernel. Where the kernel's second-order pole
// crosses the square the corner combination *defines* the integral.
//
// Lengths are in 1/eV, results in eV^2 (inverse length squared).
namespace casimir {

struct PathSegment {
  double z0 = 0.0; ///< start of the segment
  double b = 0.0;  ///< length travelled
  double v = 0.0;  ///< constant speed, t = z / v

  double end() const { return z0 + b; }

  /// Throws DomainError unless z0 > 0, b > 0 and 0 < v < 1.
  void validate() const;
};

/// Arbitrary length inside the logarithms; assembled results do not depend on it.
struct LogScale {
  double ell = 1.0;
};

/// Smallest and largest speeds accepted by the exact forms. Below the minimum
/// the 1/v^3 prefactor destroys the corner combination; use the small-v forms.
inline constexpr double min_exact_speed = 1e-6;
inline constexpr double max_exact_speed = 0.99;

/// F(z, z'): antiderivative of the reflected kernel (n = 0).
/// Throws DomainError for z or z' = 0 and PoleTouchError on the singular locus.
double antiderivative_reflected(double z, double z_prime, double v, LogScale scale = {});

/// G(z, z'): antiderivative of the translated kernel for image index n != 0.
double antiderivative_translated(double z, double z_prime, double v, double a, long n,
                                 LogScale scale = {});

/// I(z0, b, v) from the four corners of F.
double one_plate_integral(const PathSegment& seg, LogScale scale = {});

/// Two-term small-v expansion of I (O(v^-2) and O(v^0) terms).
double one_plate_integral_smallv(const PathSegment& seg);

/// b at which the kernel's pole enters the one-plate square: 2 v z0 / (1 - v).
double pole_entry_threshold(double z0, double v);

/// I_2A(n): the one-plate corners of F shifted by a*n.
double reflected_image_integral(const PathSegment& seg, double a, long n, LogScale scale = {});

/// Leading small-v form of I_2A(n), valid for 2v|an - z0| << b.
double reflected_image_integral_smallv(const PathSegment& seg, double a, long n);

/// I_2B(n) from the four corners of G.
double translated_image_integral(const PathSegment& seg, double a, long n, LogScale scale = {});

/// Leading small-v form of I_2B(n): 1 / (4 a^2 v^2 n^2), valid for 2|n| a v << b.
double translated_image_integral_smallv(double v, double a, long n);

} // namespace casimir
