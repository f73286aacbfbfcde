#pragma once

#include <variant>
#include <vector>

namespace nodalgauge {

inline constexpr double kPi = 3.14159265358979323846;

/// Outer radius of the strongly unstable quarter-ring for growth fraction gamma.
double alpha_plus(double gamma);
/// Inner radius of the strongly unstable quarter-ring for growth fraction gamma.
double alpha_minus(double gamma);

struct WaveVector {
  int k = 1;
  int l = 1;

  friend bool operator==(const WaveVector&, const WaveVector&) = default;
  friend auto operator<=>(const WaveVector&, const WaveVector&) = default;
};

/// Monomial mode weight a_{k,l} = k^p * l^q with p, q in {0, 1, 2}.
struct WeightSpec {
  int p = 0;
  int q = 0;

  static constexpr WeightSpec unit() { return {0, 0}; }
  static constexpr WeightSpec horizontal() { return {2, 0}; }
  static constexpr WeightSpec vertical() { return {0, 2}; }

  double operator()(int k, int l) const;
  void validate() const;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

/// {(xi, eta) : alpha_minus < |(xi, eta)| < alpha_plus, xi, eta > 0}.
struct QuarterRing {
  double gamma = 0.5;

  double inner() const { return alpha_minus(gamma); }
  double outer() const { return alpha_plus(gamma); }
};

/// Open rectangle (xi_lo, xi_hi) x (eta_lo, eta_hi).
struct Rect {
  double xi_lo = 0.0;
  double xi_hi = 1.0;
  double eta_lo = 0.0;
  double eta_hi = 1.0;
};

using BasicShape = std::variant<QuarterRing, Rect>;

/// Finite union of shapes. Measures add up, so the parts are expected to
/// have disjoint interiors; lattice membership is "inside any part".
struct ShapeUnion {
  std::vector<BasicShape> parts;
};

using Shape = std::variant<QuarterRing, Rect, ShapeUnion>;

/// The three comparison domains built on the ring radii.
Rect q1_shape(double gamma);
Rect q2_shape(double gamma);
Rect q3_shape(double gamma);

/// Column-strip cover of the quarter-ring by rectangles of width `width`.
ShapeUnion ring_rectangle_cover(double gamma, double width);

/// Relative excess area of a cover over the shape it covers.
double cover_defect(const Shape& cover, const Shape& covered);

/// Checks the shape invariants; throws std::invalid_argument.
void validate_shape(const Shape& shape);

/// Mirror image under (xi, eta) -> (eta, xi).
Shape transposed(const Shape& shape);

/// Whether (eps*k, eps*l) lies strictly inside the shape.
bool contains(const Shape& shape, double eps, int k, int l);

struct DomainSpec {
  Shape shape;
  double epsilon = 0.01;

  void validate() const;
  DomainSpec transposed() const { return {nodalgauge::transposed(shape), epsilon}; }
};

/// Lattice points of a scaled domain stored as per-k runs of consecutive l.
class ModeLattice {
 public:
  struct Run {
    int k;
    int l_lo;
    int l_hi;  // inclusive
  };

  ModeLattice() = default;
  explicit ModeLattice(const DomainSpec& domain);

  const std::vector<Run>& runs() const { return runs_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int max_k() const;
  int max_l() const;
  double epsilon() const { return epsilon_; }

  /// Lexicographically sorted list of all wave vectors.
  std::vector<WaveVector> modes() const;

  /// Sum of k^p l^q over all lattice points (closed-form power sums per run).
  double weighted_cardinality(const WeightSpec& weight) const;

 private:
  std::vector<Run> runs_;
  std::size_t size_ = 0;
  double epsilon_ = 0.0;
};

std::vector<WaveVector> enumerate_modes(const DomainSpec& domain);
double weighted_cardinality(const DomainSpec& domain, const WeightSpec& weight);

/// Integral of xi^p eta^q over the unscaled shape, in closed form.
double analytic_measure(const Shape& shape, const WeightSpec& weight);

/// 4 pi^2 * lambda_a(D) / lambda(D) for the weights (2,0) and (0,2).
double correction_coefficient(const Shape& shape, const WeightSpec& weight);

// Linearized Cahn-Hilliard spectrum.

struct SpectrumParams {
  double epsilon = 0.01;
  double fprime = 1.0;
  double gamma = 0.5;

  void validate() const;
};

double eigenvalue(const WaveVector& kv, const SpectrumParams& params);

/// Continuous maximum of the eigenvalue over the squared wave number.
double max_eigenvalue(const SpectrumParams& params);

/// All modes with eigenvalue > gamma * max_eigenvalue, found by scanning the spectrum.
std::vector<WaveVector> strong_set_from_spectrum(const SpectrumParams& params);

/// (1 / (2 lambda)) (1 - exp(-2 lambda t)); t at lambda == 0.
double mode_variance(double lambda, double time);

}  // namespace nodalgauge
