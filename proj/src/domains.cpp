#include "nodalgauge/domains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace nodalgauge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool ring_contains(const QuarterRing& ring, double eps, int k, int l) {
  const double r = eps * std::sqrt(double(k) * k + double(l) * l);
  return ring.inner() < r && r < ring.outer();
}

bool rect_contains(const Rect& rect, double eps, int k, int l) {
  const double xi = eps * k;
  const double eta = eps * l;
  return rect.xi_lo < xi && xi < rect.xi_hi && rect.eta_lo < eta && eta < rect.eta_hi;
}

// Positive integers n with lo < eps * n < hi, as an inclusive range; empty if first > last.
std::pair<int, int> open_range(double lo, double hi, double eps) {
  int first = std::max(1, static_cast<int>(std::floor(lo / eps)));
  while (first > 1 && eps * (first - 1) > lo) --first;
  while (!(eps * first > lo)) ++first;
  int last = static_cast<int>(std::ceil(hi / eps));
  while (last >= first && !(eps * last < hi)) --last;
  while (eps * (last + 1) < hi) ++last;
  return {first, last};
}

using RunMap = std::map<int, std::vector<std::pair<int, int>>>;

void collect_runs(const QuarterRing& ring, double eps, RunMap& out) {
  const double inner = ring.inner() / eps;
  const double outer = ring.outer() / eps;
  const int k_max = static_cast<int>(std::floor(outer)) + 1;
  for (int k = 1; k <= k_max; ++k) {
    const double kk = double(k) * k;
    int lo = static_cast<int>(std::floor(std::sqrt(std::max(0.0, inner * inner - kk)))) + 1;
    lo = std::max(1, lo);
    while (lo > 1 && eps * std::sqrt(kk + double(lo - 1) * (lo - 1)) > ring.inner()) --lo;
    while (!(eps * std::sqrt(kk + double(lo) * lo) > ring.inner())) ++lo;

    const double rest = outer * outer - kk;
    int hi = static_cast<int>(std::ceil(std::sqrt(std::max(0.0, rest))));
    while (ring_contains(ring, eps, k, hi + 1)) ++hi;
    while (hi >= lo && !ring_contains(ring, eps, k, hi)) --hi;
    if (hi >= lo) out[k].emplace_back(lo, hi);
  }
}

void collect_runs(const Rect& rect, double eps, RunMap& out) {
  const auto [k_lo, k_hi] = open_range(rect.xi_lo, rect.xi_hi, eps);
  const auto [l_lo, l_hi] = open_range(rect.eta_lo, rect.eta_hi, eps);
  if (l_lo > l_hi) return;
  for (int k = k_lo; k <= k_hi; ++k) out[k].emplace_back(l_lo, l_hi);
}

void collect_runs(const Shape& shape, double eps, RunMap& out) {
  std::visit(Overloaded{
                 [&](const ShapeUnion& u) {
                   for (const auto& part : u.parts) {
                     std::visit([&](const auto& s) { collect_runs(s, eps, out); }, part);
                   }
                 },
                 [&](const auto& s) { collect_runs(s, eps, out); },
             },
             shape);
}

double angular_moment(int p, int q) {
  // Integral of cos^p sin^q over (0, pi/2).
  static constexpr double table[3][3] = {
      {kPi / 2.0, 1.0, kPi / 4.0},
      {1.0, 0.5, 1.0 / 3.0},
      {kPi / 4.0, 1.0 / 3.0, kPi / 16.0},
  };
  return table[p][q];
}

double monomial_integral(double lo, double hi, int power) {
  const int n = power + 1;
  return (std::pow(hi, n) - std::pow(lo, n)) / n;
}

double basic_measure(const BasicShape& shape, const WeightSpec& w) {
  return std::visit(
      Overloaded{
          [&](const QuarterRing& ring) {
            const int n = w.p + w.q + 2;
            const double radial = (std::pow(ring.outer(), n) - std::pow(ring.inner(), n)) / n;
            return radial * angular_moment(w.p, w.q);
          },
          [&](const Rect& r) {
            return monomial_integral(r.xi_lo, r.xi_hi, w.p) *
                   monomial_integral(r.eta_lo, r.eta_hi, w.q);
          },
      },
      shape);
}

double power_sum(long long n, int q) {
  const double x = static_cast<double>(n);
  switch (q) {
    case 0: return x;
    case 1: return x * (x + 1.0) / 2.0;
    case 2: return x * (x + 1.0) * (2.0 * x + 1.0) / 6.0;
    default: throw std::invalid_argument("unsupported weight exponent");
  }
}

void validate_basic(const BasicShape& shape) {
  std::visit(Overloaded{
                 [](const QuarterRing& ring) {
                   if (!(ring.gamma > 0.0 && ring.gamma < 1.0)) {
                     throw std::invalid_argument("ring gamma must lie in (0,1)");
                   }
                 },
                 [](const Rect& r) {
                   if (!(r.xi_lo >= 0.0 && r.xi_lo < r.xi_hi && r.eta_lo >= 0.0 &&
                         r.eta_lo < r.eta_hi) ||
                       !std::isfinite(r.xi_hi) || !std::isfinite(r.eta_hi)) {
                     throw std::invalid_argument("rect bounds must satisfy 0 <= lo < hi");
                   }
                 },
             },
             shape);
}

}  // namespace

double alpha_plus(double gamma) {
  return std::sqrt((1.0 + std::sqrt(1.0 - gamma)) / (2.0 * kPi * kPi));
}

double alpha_minus(double gamma) {
  return std::sqrt((1.0 - std::sqrt(1.0 - gamma)) / (2.0 * kPi * kPi));
}

double WeightSpec::operator()(int k, int l) const {
  const auto power = [](int base, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= base;
    return v;
  };
  return power(k, p) * power(l, q);
}

void WeightSpec::validate() const {
  if (p < 0 || p > 2 || q < 0 || q > 2) {
    throw std::invalid_argument("unsupported weight exponents (" + std::to_string(p) + "," +
                                std::to_string(q) + "); each must be 0, 1 or 2");
  }
}

Rect q1_shape(double gamma) {
  const double ap = alpha_plus(gamma);
  return {0.0, ap, 0.0, ap};
}

Rect q2_shape(double gamma) {
  const double ap = alpha_plus(gamma);
  const double am = alpha_minus(gamma);
  return {am, ap, am, ap};
}

Rect q3_shape(double gamma) {
  const double ap = alpha_plus(gamma);
  const double am = alpha_minus(gamma);
  return {am, ap, 2.0 * am, am + ap};
}

ShapeUnion ring_rectangle_cover(double gamma, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("cover width must be positive");
  const double ap = alpha_plus(gamma);
  const double am = alpha_minus(gamma);
  ShapeUnion cover;
  for (double x0 = 0.0; x0 < ap; x0 += width) {
    const double x1 = std::min(x0 + width, ap);
    const double top = std::sqrt(ap * ap - x0 * x0);
    const double bottom = std::sqrt(std::max(0.0, am * am - x1 * x1));
    if (top > bottom) cover.parts.emplace_back(Rect{x0, x1, bottom, top});
  }
  return cover;
}

double cover_defect(const Shape& cover, const Shape& covered) {
  const double inner = analytic_measure(covered, WeightSpec::unit());
  return (analytic_measure(cover, WeightSpec::unit()) - inner) / inner;
}

void validate_shape(const Shape& shape) {
  std::visit(Overloaded{
                 [](const ShapeUnion& u) {
                   for (const auto& part : u.parts) validate_basic(part);
                 },
                 [](const auto& s) { validate_basic(s); },
             },
             shape);
}

Shape transposed(const Shape& shape) {
  const auto flip = [](const BasicShape& s) -> BasicShape {
    if (const auto* r = std::get_if<Rect>(&s)) return Rect{r->eta_lo, r->eta_hi, r->xi_lo, r->xi_hi};
    return s;
  };
  return std::visit(Overloaded{
                        [&](const ShapeUnion& u) -> Shape {
                          ShapeUnion out;
                          for (const auto& part : u.parts) out.parts.push_back(flip(part));
                          return out;
                        },
                        [&](const QuarterRing& r) -> Shape { return r; },
                        [&](const Rect& r) -> Shape { return std::get<Rect>(flip(r)); },
                    },
                    shape);
}

bool contains(const Shape& shape, double eps, int k, int l) {
  const auto basic = [&](const BasicShape& s) {
    return std::visit(Overloaded{
                          [&](const QuarterRing& r) { return ring_contains(r, eps, k, l); },
                          [&](const Rect& r) { return rect_contains(r, eps, k, l); },
                      },
                      s);
  };
  return std::visit(Overloaded{
                        [&](const ShapeUnion& u) {
                          return std::any_of(u.parts.begin(), u.parts.end(), basic);
                        },
                        [&](const QuarterRing& r) { return ring_contains(r, eps, k, l); },
                        [&](const Rect& r) { return rect_contains(r, eps, k, l); },
                    },
                    shape);
}

void DomainSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be a positive finite number");
  }
  validate_shape(shape);
}

ModeLattice::ModeLattice(const DomainSpec& domain) : epsilon_(domain.epsilon) {
  domain.validate();
  RunMap rows;
  collect_runs(domain.shape, domain.epsilon, rows);
  for (auto& [k, intervals] : rows) {
    std::sort(intervals.begin(), intervals.end());
    int lo = intervals.front().first;
    int hi = intervals.front().second;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (intervals[i].first <= hi + 1) {
        hi = std::max(hi, intervals[i].second);
      } else {
        runs_.push_back({k, lo, hi});
        lo = intervals[i].first;
        hi = intervals[i].second;
      }
    }
    runs_.push_back({k, lo, hi});
  }
  for (const auto& run : runs_) size_ += static_cast<std::size_t>(run.l_hi - run.l_lo + 1);
}

int ModeLattice::max_k() const { return runs_.empty() ? 0 : runs_.back().k; }

int ModeLattice::max_l() const {
  int m = 0;
  for (const auto& run : runs_) m = std::max(m, run.l_hi);
  return m;
}

std::vector<WaveVector> ModeLattice::modes() const {
  std::vector<WaveVector> out;
  out.reserve(size_);
  for (const auto& run : runs_) {
    for (int l = run.l_lo; l <= run.l_hi; ++l) out.push_back({run.k, l});
  }
  return out;
}

double ModeLattice::weighted_cardinality(const WeightSpec& weight) const {
  weight.validate();
  double total = 0.0;
  for (const auto& run : runs_) {
    const double l_sum = power_sum(run.l_hi, weight.q) - power_sum(run.l_lo - 1, weight.q);
    total += weight(run.k, 1) * l_sum;
  }
  return total;
}

std::vector<WaveVector> enumerate_modes(const DomainSpec& domain) {
  return ModeLattice(domain).modes();
}

double weighted_cardinality(const DomainSpec& domain, const WeightSpec& weight) {
  return ModeLattice(domain).weighted_cardinality(weight);
}

double analytic_measure(const Shape& shape, const WeightSpec& weight) {
  weight.validate();
  validate_shape(shape);
  return std::visit(Overloaded{
                        [&](const ShapeUnion& u) {
                          double total = 0.0;
                          for (const auto& part : u.parts) total += basic_measure(part, weight);
                          return total;
                        },
                        [&](const auto& s) { return basic_measure(s, weight); },
                    },
                    shape);
}

double correction_coefficient(const Shape& shape, const WeightSpec& weight) {
  if (!(weight == WeightSpec::horizontal() || weight == WeightSpec::vertical())) {
    throw std::invalid_argument("correction coefficient needs weight (2,0) or (0,2)");
  }
  const double area = analytic_measure(shape, WeightSpec::unit());
  if (!(area > 0.0)) throw std::domain_error("degenerate domain");
  return 4.0 * kPi * kPi * analytic_measure(shape, weight) / area;
}

void SpectrumParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
}

double eigenvalue(const WaveVector& kv, const SpectrumParams& params) {
  const double s = double(kv.k) * kv.k + double(kv.l) * kv.l;
  const double pi2 = kPi * kPi;
  return -params.epsilon * params.epsilon * s * s * pi2 * pi2 + s * pi2 * params.fprime;
}

double max_eigenvalue(const SpectrumParams& params) {
  return params.fprime * params.fprime / (4.0 * params.epsilon * params.epsilon);
}

std::vector<WaveVector> strong_set_from_spectrum(const SpectrumParams& params) {
  params.validate();
  std::vector<WaveVector> out;
  if (!(params.fprime > 0.0)) return out;
  const double threshold = params.gamma * max_eigenvalue(params);
  // Positive eigenvalues need k^2 + l^2 < fprime / (eps^2 pi^2).
  const double s_max = params.fprime / (params.epsilon * params.epsilon * kPi * kPi);
  const int n_max = static_cast<int>(std::ceil(std::sqrt(s_max))) + 1;
  for (int k = 1; k <= n_max; ++k) {
    for (int l = 1; l <= n_max; ++l) {
      if (eigenvalue({k, l}, params) > threshold) out.push_back({k, l});
    }
  }
  return out;
}

double mode_variance(double lambda, double time) {
  if (!(time >= 0.0)) throw std::invalid_argument("time must be non-negative");
  if (lambda == 0.0) return time;
  return -std::expm1(-2.0 * lambda * time) / (2.0 * lambda);
}

}  // namespace nodalgauge
