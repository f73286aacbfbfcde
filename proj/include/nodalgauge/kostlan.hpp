#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nodalgauge/domains.hpp"

namespace nodalgauge {

/// A straight line through the unit square.
///  - horizontal: {(x, t)}, parameter x in [0, 1]
///  - vertical:   {(s, y)}, parameter y in [0, 1]
///  - sloped:     {(x, mu x + tau)}, parameter x clipped to the square
struct LineSpec {
  enum class Kind { horizontal, vertical, sloped };

  Kind kind = Kind::horizontal;
  double offset = 0.5;  // t for horizontal, s for vertical
  double mu = 0.0;
  double tau = 0.0;

  static LineSpec horizontal(double t) { return {Kind::horizontal, t, 0.0, 0.0}; }
  static LineSpec vertical(double s) { return {Kind::vertical, s, 0.0, 0.0}; }
  static LineSpec sloped(double mu, double tau) { return {Kind::sloped, 0.0, mu, tau}; }

  void validate() const;
  /// Admissible parameter interval [lo, hi].
  std::pair<double, double> parameter_interval() const;
  /// Euclidean length of the clipped segment.
  double length() const;
  /// Point of the square at parameter value u.
  std::pair<double, double> point(double u) const;
};

/// S1 = sum a^2, S2 = sum a a', S3 = sum a'^2 where a is the basis function
/// cos(k pi x) cos(l pi y) restricted to the line and ' is d/dparameter.
struct KostlanSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

enum class SumMethod { accelerated, naive };

/// Sampled density along a line.
struct DensityProfile {
  LineSpec line;
  double epsilon = 0.0;
  std::vector<double> xs;
  std::vector<double> deltas;
  std::size_t clamped = 0;
};

/// Sum_{n=n_lo}^{n_hi} cos^2(n theta) in O(1).
double accelerated_cos2_range_sum(long long n_lo, long long n_hi, double theta);

/// (1/pi) sqrt(S3/S1 - (S2/S1)^2). Negative rounding residue under the root
/// is clamped to zero and reported through `clamped`.
double density_from_sums(const KostlanSums& sums, std::size_t n_modes, bool* clamped = nullptr);

/// Expected-zero-density evaluator for one scaled Fourier domain.
class KostlanEngine {
 public:
  explicit KostlanEngine(const DomainSpec& domain);

  const DomainSpec& domain() const { return domain_; }
  const ModeLattice& lattice() const { return lattice_; }
  /// Lattice of the mirrored domain; vertical lines are horizontal lines there.
  const ModeLattice& transposed_lattice() const { return transposed_; }

  KostlanSums sums_horizontal(double x, double t, SumMethod method = SumMethod::accelerated) const;
  KostlanSums sums_vertical(double s, double y, SumMethod method = SumMethod::accelerated) const;
  KostlanSums sums_sloped(double x, double mu, double tau) const;

  double density_horizontal(double x, double t, SumMethod method = SumMethod::accelerated) const;
  double density_vertical(double s, double y, SumMethod method = SumMethod::accelerated) const;
  double density_sloped(double x, double mu, double tau) const;

  /// Density at parameter u of the line (per unit parameter).
  double density(const LineSpec& line, double u) const;

  DensityProfile profile(const LineSpec& line, std::span<const double> params,
                         int threads = 1) const;

  /// Composite-midpoint integral of the density over the line's parameter interval.
  double expected_zero_count(const LineSpec& line, int panels = 2000, int threads = 1) const;

  /// Segment length divided by the expected zero count.
  double pattern_size(const LineSpec& line, int panels = 2000, int threads = 1) const;

 private:
  DomainSpec domain_;
  ModeLattice lattice_;
  ModeLattice transposed_;
};

KostlanSums sums_horizontal(const DomainSpec& domain, double x, double t);
double density_horizontal(const DomainSpec& domain, double x, double t);
KostlanSums sums_sloped(const DomainSpec& domain, double x, double mu, double tau);
double density_sloped(const DomainSpec& domain, double x, double mu, double tau);
double expected_zero_count(const DomainSpec& domain, const LineSpec& line, int panels = 2000);
double pattern_size(const DomainSpec& domain, const LineSpec& line, int panels = 2000);

/// Large-scale-separation limits: correction coefficient, zeros per unit line, pattern size.
struct AsymptoticPrediction {
  double correction = 0.0;
  double zeros = 0.0;
  double pattern_size = 0.0;
};

AsymptoticPrediction asymptotic_prediction(const Shape& shape, const WeightSpec& weight,
                                           double epsilon);

}  // namespace nodalgauge
