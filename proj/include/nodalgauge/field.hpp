#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nodalgauge/domains.hpp"

namespace nodalgauge {

/// One draw of f(x,y) = sum c_{k,l} cos(k pi x) cos(l pi y).
struct FieldRealization {
  DomainSpec domain;
  std::vector<WaveVector> modes;  // lexicographic
  std::vector<double> coeffs;     // same order as modes
  std::uint64_t seed = 0;
};

/// values[i * n + j] = f(i / (n-1), j / (n-1)); i runs along x.
struct GridSample {
  int resolution = 0;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * resolution + j]; }
};

FieldRealization sample_field(const DomainSpec& domain, std::uint64_t seed);

/// Realization with caller-supplied coefficients (tests, sign flips).
FieldRealization make_field(const DomainSpec& domain, std::vector<double> coeffs,
                            std::uint64_t seed = 0);

double evaluate(const FieldRealization& field, double x, double y);

GridSample evaluate_grid(const FieldRealization& field, int n);

/// Coefficients of the one-dimensional cosine series obtained by freezing
/// one coordinate: along x = s (vertical) the result b_l multiplies cos(l pi y),
/// along y = t (horizontal) b_k multiplies cos(k pi x). Index 0 is unused.
std::vector<double> restrict_vertical(const FieldRealization& field, double s);
std::vector<double> restrict_horizontal(const FieldRealization& field, double t);

/// Sum_{n>=1} b_n cos(n theta) by Clenshaw recurrence.
double cosine_series(std::span<const double> b, double theta);

/// q(z) = 1/2 sum cos(k pi z1) cos(l pi z2).
double covariance_q(const DomainSpec& domain, double z1, double z2);
/// q on the diagonal z1 = z2 = z.
double covariance_q(const DomainSpec& domain, double z);

/// Exact two-point covariance E f(x1,y1) f(x2,y2) of the unit-variance field.
double covariance_exact(const DomainSpec& domain, double x1, double y1, double x2, double y2);

}  // namespace nodalgauge
