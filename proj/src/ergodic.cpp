#include "nodalgauge/ergodic.hpp"

#include <cmath>
#include <stdexcept>

#include "nodalgauge/parallel.hpp"

namespace nodalgauge {

double AveragingReport::abs_error(std::size_t i) const { return std::abs(values.at(i) - target); }

double birkhoff_cos2_average(double x, long long n_terms) {
  if (n_terms < 1) throw std::invalid_argument("need at least one term");
  CompensatedSum sum;
  for (long long k = 1; k <= n_terms; ++k) {
    const double c = std::cos(static_cast<double>(k) * kPi * x);
    sum += c * c;
  }
  return sum.value() / static_cast<double>(n_terms);
}

double rational_closed_form(int n, long long n_terms) {
  if (n < 1 || n_terms < 1) throw std::invalid_argument("n and N must be positive");
  if (n == 1) return 1.0;
  // sum_{k=1}^{N} cos(2 pi k / n) = (sin((2N+1) pi / n) - sin(pi / n)) / (2 sin(pi / n))
  const double a = kPi / n;
  const double phase = static_cast<double>(2 * (n_terms % n) + 1) * a;
  const double dirichlet = (std::sin(phase) - std::sin(a)) / (2.0 * std::sin(a));
  return 0.5 + dirichlet / (2.0 * static_cast<double>(n_terms));
}

double rational_exact(int n, long long n_terms) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (n_terms < 1 || n_terms % n != 0) {
    throw std::invalid_argument("N must be a positive multiple of n");
  }
  return rational_closed_form(n, n_terms);
}

double weighted_cos2_average(double x, long long n_terms, int p) {
  if (n_terms < 1) throw std::invalid_argument("need at least one term");
  if (p < 0 || p > 2) throw std::invalid_argument("weight exponent must be 0, 1 or 2");
  CompensatedSum num;
  CompensatedSum den;
  for (long long k = 1; k <= n_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double w = p == 0 ? 1.0 : (p == 1 ? kd : kd * kd);
    const double c = std::cos(kd * kPi * x);
    num += w * c * c;
    den += w;
  }
  return num.value() / den.value();
}

AveragingReport birkhoff_report(double x, std::span<const long long> cutoffs, int p,
                                double tolerance) {
  AveragingReport report;
  report.probe = {x, 0.0};
  report.target = std::abs(x - std::round(x)) == 0.0 ? 1.0 : 0.5;
  long long previous = 0;
  for (long long n : cutoffs) {
    if (n <= previous) throw std::invalid_argument("cutoffs must be strictly increasing");
    previous = n;
    report.cutoffs.push_back(static_cast<double>(n));
    report.values.push_back(weighted_cos2_average(x, n, p));
  }
  report.converged = !report.values.empty() && report.abs_error(report.values.size() - 1) < tolerance;
  return report;
}

double integrand_mean(Integrand g) {
  switch (g) {
    case Integrand::cos2_cos2: return 0.25;
    case Integrand::sin2_cos2: return 0.25;
    case Integrand::cossin_cos2: return 0.0;
  }
  return 0.0;
}

double integrand_value(Integrand g, double u, double v) {
  const double cu = std::cos(kPi * u);
  const double su = std::sin(kPi * u);
  const double cv = std::cos(kPi * v);
  switch (g) {
    case Integrand::cos2_cos2: return cu * cu * cv * cv;
    case Integrand::sin2_cos2: return su * su * cv * cv;
    case Integrand::cossin_cos2: return cu * su * cv * cv;
  }
  return 0.0;
}

double weighted_lattice_average(const DomainSpec& domain, const WeightSpec& weight,
                                std::pair<double, double> probe, Integrand g) {
  weight.validate();
  const ModeLattice lattice(domain);
  if (lattice.empty()) throw std::invalid_argument("empty mode set");
  CompensatedSum num;
  CompensatedSum den;
  for (const auto& run : lattice.runs()) {
    for (int l = run.l_lo; l <= run.l_hi; ++l) {
      const double a = weight(run.k, l);
      num += a * integrand_value(g, run.k * probe.first, l * probe.second);
      den += a;
    }
  }
  return num.value() / den.value();
}

AveragingReport weighted_condition_check(const Shape& shape, std::span<const double> epsilons,
                                         const WeightSpec& weight,
                                         std::pair<double, double> probe, Integrand g,
                                         double tolerance) {
  AveragingReport report;
  report.probe = probe;
  report.target = integrand_mean(g);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw std::invalid_argument("scales must be strictly decreasing");
    }
    report.cutoffs.push_back(epsilons[i]);
    report.values.push_back(weighted_lattice_average({shape, epsilons[i]}, weight, probe, g));
  }
  report.converged = !report.values.empty() && report.abs_error(report.values.size() - 1) < tolerance;
  return report;
}

}  // namespace nodalgauge
