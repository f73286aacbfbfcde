#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nodalgauge/domains.hpp"

namespace nodalgauge {

/// Partial averages against a known limit. `cutoffs` holds the summation
/// lengths N (increasing) or the domain scales eps (decreasing).
struct AveragingReport {
  std::pair<double, double> probe{0.0, 0.0};
  std::vector<double> cutoffs;
  std::vector<double> values;
  double target = 0.0;
  bool converged = false;

  double abs_error(std::size_t i) const;
};

/// (1/N) sum_{k=1}^{N} cos^2(k pi x).
double birkhoff_cos2_average(double x, long long n_terms);

/// Closed form of birkhoff_cos2_average(1/n, N) from the Dirichlet kernel.
double rational_closed_form(int n, long long n_terms);

/// Full-period value: N must be a positive multiple of n.
double rational_exact(int n, long long n_terms);

/// sum k^p cos^2(k pi x) / sum k^p over k = 1..N, p in {0, 1, 2}.
double weighted_cos2_average(double x, long long n_terms, int p);

AveragingReport birkhoff_report(double x, std::span<const long long> cutoffs, int p = 0,
                                double tolerance = 1e-3);

/// Integrands of the two-dimensional averaging condition.
enum class Integrand { cos2_cos2, sin2_cos2, cossin_cos2 };

/// Integral of the integrand over the unit square.
double integrand_mean(Integrand g);

double integrand_value(Integrand g, double u, double v);

/// Weighted lattice average (1/|D|_a) sum a_{k,l} g(k x0, l t0) of one scaled domain.
double weighted_lattice_average(const DomainSpec& domain, const WeightSpec& weight,
                                std::pair<double, double> probe, Integrand g);

/// Weighted lattice averages over a decreasing list of scales, compared with
/// the integral of g. `converged` means the last error is below `tolerance`.
AveragingReport weighted_condition_check(const Shape& shape, std::span<const double> epsilons,
                                         const WeightSpec& weight,
                                         std::pair<double, double> probe, Integrand g,
                                         double tolerance = 0.02);

}  // namespace nodalgauge
