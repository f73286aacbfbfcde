#include "nodalgauge/kostlan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nodalgauge/parallel.hpp"

namespace nodalgauge {

namespace {

// Sums of n^2 and n^4 over 1..n.
long double square_sum(long long n) {
  const long double x = n;
  return x * (x + 1) * (2 * x + 1) / 6;
}

long double quartic_sum(long long n) {
  const long double x = n;
  return x * (x + 1) * (2 * x + 1) * (3 * x * x + 3 * x - 1) / 30;
}

// Generic kernel along y = mu x + (t - mu x); the basis derivative is taken in x.
KostlanSums direct_sums(const ModeLattice& lattice, double x, double mu, double t) {
  const int k_max = lattice.max_k();
  const int l_max = lattice.max_l();
  std::vector<double> ck(k_max + 1), sk(k_max + 1), cl(l_max + 1), sl(l_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    ck[k] = std::cos(k * kPi * x);
    sk[k] = std::sin(k * kPi * x);
  }
  for (int l = 1; l <= l_max; ++l) {
    cl[l] = std::cos(l * kPi * t);
    sl[l] = std::sin(l * kPi * t);
  }
  KostlanSums sums;
  for (const auto& run : lattice.runs()) {
    const double kpi_s = run.k * kPi * sk[run.k];
    const double c_k = ck[run.k];
    for (int l = run.l_lo; l <= run.l_hi; ++l) {
      const double a = c_k * cl[l];
      const double d = kpi_s * cl[l] + l * kPi * mu * sl[l] * c_k;
      sums.s1 += a * a;
      sums.s2 += a * d;
      sums.s3 += d * d;
    }
  }
  return sums;
}

std::vector<double> run_weights(const ModeLattice& lattice, double t) {
  std::vector<double> w;
  w.reserve(lattice.runs().size());
  for (const auto& run : lattice.runs()) {
    w.push_back(accelerated_cos2_range_sum(run.l_lo, run.l_hi, kPi * t));
  }
  return w;
}

KostlanSums row_sums(const ModeLattice& lattice, std::span<const double> weights, double x) {
  KostlanSums sums;
  const auto& runs = lattice.runs();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const double kpi = runs[i].k * kPi;
    const double c = std::cos(kpi * x);
    const double s = std::sin(kpi * x);
    sums.s1 += c * c * weights[i];
    sums.s2 += kpi * c * s * weights[i];
    sums.s3 += kpi * kpi * s * s * weights[i];
  }
  return sums;
}

void check_in_square(double x, double y) {
  constexpr double slack = 1e-12;
  if (!(x >= -slack && x <= 1.0 + slack && y >= -slack && y <= 1.0 + slack)) {
    throw std::invalid_argument("point outside the unit square");
  }
}

KostlanSums axis_sums(const ModeLattice& lattice, double x, double t, SumMethod method) {
  if (lattice.empty()) throw std::invalid_argument("empty mode set");
  check_in_square(x, t);
  if (method == SumMethod::naive) return direct_sums(lattice, x, 0.0, t);
  return row_sums(lattice, run_weights(lattice, t), x);
}

// Density along a fixed line, with per-line work hoisted out of the point loop.
class LineDensity {
 public:
  LineDensity(const KostlanEngine& engine, const LineSpec& line) : line_(line) {
    switch (line.kind) {
      case LineSpec::Kind::horizontal:
        lattice_ = &engine.lattice();
        break;
      case LineSpec::Kind::vertical:
        lattice_ = &engine.transposed_lattice();
        break;
      case LineSpec::Kind::sloped:
        lattice_ = &engine.lattice();
        return;
    }
    if (lattice_->empty()) throw std::invalid_argument("empty mode set");
    weights_ = run_weights(*lattice_, line.offset);
  }

  double operator()(double u, bool* clamped) const {
    KostlanSums sums;
    if (line_.kind == LineSpec::Kind::sloped) {
      const double t = line_.mu * u + line_.tau;
      check_in_square(u, t);
      sums = direct_sums(*lattice_, u, line_.mu, t);
    } else {
      check_in_square(u, line_.offset);
      sums = row_sums(*lattice_, weights_, u);
    }
    return density_from_sums(sums, lattice_->size(), clamped);
  }

 private:
  LineSpec line_;
  const ModeLattice* lattice_ = nullptr;
  std::vector<double> weights_;
};

}  // namespace

void LineSpec::validate() const {
  switch (kind) {
    case Kind::horizontal:
    case Kind::vertical:
      if (!(offset > 0.0 && offset < 1.0)) {
        throw std::invalid_argument("axis-aligned line offset must lie in (0,1)");
      }
      return;
    case Kind::sloped: {
      if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("slope must lie in (0,1]");
      if (!std::isfinite(tau)) throw std::invalid_argument("intercept must be finite");
      const auto [lo, hi] = parameter_interval();
      if (!(lo < hi)) throw std::invalid_argument("sloped line misses the unit square");
      return;
    }
  }
}

std::pair<double, double> LineSpec::parameter_interval() const {
  if (kind != Kind::sloped) return {0.0, 1.0};
  return {std::max(0.0, -tau / mu), std::min(1.0, (1.0 - tau) / mu)};
}

double LineSpec::length() const {
  const auto [lo, hi] = parameter_interval();
  if (kind != Kind::sloped) return hi - lo;
  return (hi - lo) * std::sqrt(1.0 + mu * mu);
}

std::pair<double, double> LineSpec::point(double u) const {
  switch (kind) {
    case Kind::horizontal: return {u, offset};
    case Kind::vertical: return {offset, u};
    case Kind::sloped: return {u, mu * u + tau};
  }
  return {u, offset};
}

double accelerated_cos2_range_sum(long long n_lo, long long n_hi, double theta) {
  if (n_lo > n_hi) throw std::invalid_argument("empty summation range");
  const long long count = n_hi - n_lo + 1;
  // cos^2(n theta) only depends on theta modulo pi.
  const double r = theta - kPi * std::nearbyint(theta / kPi);
  const double sin_r = std::sin(r);
  long double cos_sum;  // sum of cos(2 n r)
  if (std::abs(sin_r) < 1e-8) {
    const long double r2 = static_cast<long double>(r) * r;
    const long double n2 = square_sum(n_hi) - square_sum(n_lo - 1);
    const long double n4 = quartic_sum(n_hi) - quartic_sum(n_lo - 1);
    cos_sum = count - 2 * r2 * n2 + (2.0L / 3.0L) * r2 * r2 * n4;
  } else {
    cos_sum = std::sin(static_cast<double>(count) * r) *
              std::cos(static_cast<double>(n_lo + n_hi) * r) / sin_r;
  }
  return static_cast<double>(0.5L * count + 0.5L * cos_sum);
}

double density_from_sums(const KostlanSums& sums, std::size_t n_modes, bool* clamped) {
  if (!(sums.s1 > 1e-24 * static_cast<double>(std::max<std::size_t>(n_modes, 1)))) {
    throw std::domain_error("degenerate evaluation point");
  }
  const double ratio = sums.s2 / sums.s1;
  double w = sums.s3 / sums.s1 - ratio * ratio;
  // Anything below the cancellation error of S3/S1 is rounding residue.
  const bool negative = w < 0.0;
  if (w <= 64.0 * std::numeric_limits<double>::epsilon() * (sums.s3 / sums.s1)) w = 0.0;
  if (clamped) *clamped = negative;
  return std::sqrt(w) / kPi;
}

KostlanEngine::KostlanEngine(const DomainSpec& domain)
    : domain_(domain), lattice_(domain), transposed_(domain.transposed()) {}

KostlanSums KostlanEngine::sums_horizontal(double x, double t, SumMethod method) const {
  return axis_sums(lattice_, x, t, method);
}

KostlanSums KostlanEngine::sums_vertical(double s, double y, SumMethod method) const {
  return axis_sums(transposed_, y, s, method);
}

KostlanSums KostlanEngine::sums_sloped(double x, double mu, double tau) const {
  if (lattice_.empty()) throw std::invalid_argument("empty mode set");
  const double t = mu * x + tau;
  check_in_square(x, t);
  return direct_sums(lattice_, x, mu, t);
}

double KostlanEngine::density_horizontal(double x, double t, SumMethod method) const {
  return density_from_sums(sums_horizontal(x, t, method), lattice_.size());
}

double KostlanEngine::density_vertical(double s, double y, SumMethod method) const {
  return density_from_sums(sums_vertical(s, y, method), transposed_.size());
}

double KostlanEngine::density_sloped(double x, double mu, double tau) const {
  return density_from_sums(sums_sloped(x, mu, tau), lattice_.size());
}

double KostlanEngine::density(const LineSpec& line, double u) const {
  return LineDensity(*this, line)(u, nullptr);
}

DensityProfile KostlanEngine::profile(const LineSpec& line, std::span<const double> params,
                                      int threads) const {
  line.validate();
  const LineDensity density(*this, line);
  DensityProfile out{line, domain_.epsilon, {params.begin(), params.end()},
                     std::vector<double>(params.size()), 0};
  std::vector<char> clamped(params.size(), 0);
  parallel_for(params.size(), threads, [&](std::size_t i) {
    bool c = false;
    out.deltas[i] = density(params[i], &c);
    clamped[i] = c;
  });
  out.clamped = static_cast<std::size_t>(std::count(clamped.begin(), clamped.end(), 1));
  return out;
}

double KostlanEngine::expected_zero_count(const LineSpec& line, int panels, int threads) const {
  if (panels < 16) throw std::invalid_argument("at least 16 quadrature panels required");
  line.validate();
  const auto [lo, hi] = line.parameter_interval();
  const double h = (hi - lo) / panels;
  std::vector<double> nodes(static_cast<std::size_t>(panels));
  for (int i = 0; i < panels; ++i) nodes[i] = lo + (i + 0.5) * h;
  const auto prof = profile(line, nodes, threads);
  CompensatedSum total;
  for (double d : prof.deltas) total += d;
  return total.value() * h;
}

double KostlanEngine::pattern_size(const LineSpec& line, int panels, int threads) const {
  const double zeros = expected_zero_count(line, panels, threads);
  if (!(zeros > 0.0)) throw std::domain_error("no zeros predicted");
  return line.length() / zeros;
}

KostlanSums sums_horizontal(const DomainSpec& domain, double x, double t) {
  return KostlanEngine(domain).sums_horizontal(x, t);
}

double density_horizontal(const DomainSpec& domain, double x, double t) {
  return KostlanEngine(domain).density_horizontal(x, t);
}

KostlanSums sums_sloped(const DomainSpec& domain, double x, double mu, double tau) {
  return KostlanEngine(domain).sums_sloped(x, mu, tau);
}

double density_sloped(const DomainSpec& domain, double x, double mu, double tau) {
  return KostlanEngine(domain).density_sloped(x, mu, tau);
}

double expected_zero_count(const DomainSpec& domain, const LineSpec& line, int panels) {
  return KostlanEngine(domain).expected_zero_count(line, panels);
}

double pattern_size(const DomainSpec& domain, const LineSpec& line, int panels) {
  return KostlanEngine(domain).pattern_size(line, panels);
}

AsymptoticPrediction asymptotic_prediction(const Shape& shape, const WeightSpec& weight,
                                           double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double c = correction_coefficient(shape, weight);
  const double root = std::sqrt(c);
  return {c, root / (2.0 * kPi * epsilon), 2.0 * kPi * epsilon / root};
}

}  // namespace nodalgauge
