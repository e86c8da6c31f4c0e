#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "casimir/closed_forms.hpp"
#include "casimir/correlators.hpp"

// Independent checks of the closed forms: direct adaptive quadrature of the
// defining double integrals where the kernel is pole-free, Richardson mixed
// finite differences of the antiderivatives, and brute-force image sums.
// Nothing here calls into the closed-form evaluation path.
namespace casimir::oracle {

enum class ImageFamily {
  Reflected,  ///< (z - z')^2 - v^2 (z + z' - 2an)^2
  Translated, ///< (z - z')^2 - v^2 (z - z' - 2an)^2
};

struct QuadratureSpec {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  long max_subdivisions = 1'000'000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0; ///< conservative |K15 - G7| based estimate
  long subdivisions = 0;
};

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [lo, hi].
/// Throws ConvergenceError when the tolerance is not met within
/// max_subdivisions or the integrand is not finite.
QuadratureResult integrate(const Integrand1D& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// Nested adaptive quadrature over [x0, x1] x [y0, y1]; the subdivision budget
/// is shared between the outer and all inner integrals.
QuadratureResult integrate_2d(const Integrand2D& f, double x0, double x1, double y0, double y1,
                              const QuadratureSpec& spec = {});

// Kernels written out directly from their definitions.
double one_plate_kernel(double z, double z_prime, double v);
double image_kernel(double z, double z_prime, double v, double a, long n, ImageFamily family);

/// True when the kernel's singular locus misses the closed square.
bool pole_free(const PathSegment& seg);
bool pole_free(const PathSegment& seg, double a, long n, ImageFamily family);

/// Quadrature of the one-plate integral. Refuses (RefusalError) unless
/// b < 2 v z0 / (1 - v).
QuadratureResult quad_I(const PathSegment& seg, const QuadratureSpec& spec = {});

/// Quadrature of I_2A(n) or I_2B(n); refuses when the pole meets the square.
QuadratureResult quad_I2(const PathSegment& seg, double a, long n, ImageFamily family,
                         const QuadratureSpec& spec = {});

struct DerivativeReport {
  bool ok = false;
  double estimate = 0.0;       ///< extrapolated mixed derivative
  double analytic = 0.0;       ///< kernel at the point
  double relative_error = 0.0; ///< |estimate - analytic| / |analytic|
  double observed_order = 0.0; ///< from the first three raw differences
  std::vector<double> raw;     ///< un-extrapolated central differences per step
  std::string diagnostic;      ///< set when !ok
};

/// Mixed central differences of `antiderivative` at (z, z'), extrapolated to
/// zero step (Neville in h^2, taking the most self-consistent tableau entry),
/// compared with `kernel`. Steps must be positive and strictly decreasing.
/// Errors thrown by either callable are caught and turned into a failed report.
DerivativeReport deriv_check(const Integrand2D& antiderivative, const Integrand2D& kernel,
                             double z, double z_prime, std::span<const double> steps);

/// Geometric steps h0, h0/2, ... sized so every stencil point stays at least
/// a tenth of the way from the point to the nearest singular line.
std::vector<double> default_steps(double distance_to_singularity, int count = 6);

/// Perpendicular distance of (z, z') to the nearest singular line of the kernel.
double singular_distance(double z, double z_prime, double v);
double singular_distance(double z, double z_prime, double v, double a, long n,
                         ImageFamily family);

DerivativeReport deriv_check_reflected(double z, double z_prime, double v);
DerivativeReport deriv_check_translated(double z, double z_prime, double v, double a, long n);

/// Two-plate correlator summed over |n| <= n_terms with no tail logic.
double brute_force_corr_dual(const SpacetimePair& p, double a, long n_terms);

// -- verification suite -----------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;    ///< worst observed value of the checked quantity
  double threshold = 0.0; ///< pass iff metric <= threshold
  std::string detail;
};

struct VerificationOptions {
  std::uint64_t seed = 20200812;
  int quadrature_sets = 50;
  int derivative_points = 20;
  /// Test hook: negate F on the closed-form side of every comparison.
  bool flip_reflected_sign = false;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

VerificationReport run_verification(const VerificationOptions& options = {});

} // namespace casimir::oracle
