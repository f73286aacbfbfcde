#include "nodalgauge/montecarlo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nodalgauge/parallel.hpp"
#include "nodalgauge/random.hpp"

namespace nodalgauge {

namespace {

constexpr std::uint64_t kLineStream = 2;
constexpr double kOffsetLo = 0.001;
constexpr double kOffsetHi = 0.999;

void check_step(const FieldRealization& field, double step) {
  if (!(step > 0.0) || step > field.domain.epsilon / 20.0 * (1.0 + 1e-12)) {
    throw std::invalid_argument("step exceeds resolution bound");
  }
}

// Evaluates the field along one line; axis-aligned lines collapse to a 1-D cosine series.
class LineSampler {
 public:
  LineSampler(const FieldRealization& field, const LineSpec& line) : field_(field), line_(line) {
    if (line.kind == LineSpec::Kind::vertical) series_ = restrict_vertical(field, line.offset);
    if (line.kind == LineSpec::Kind::horizontal) series_ = restrict_horizontal(field, line.offset);
  }

  double operator()(double u) const {
    if (line_.kind == LineSpec::Kind::sloped) {
      const auto [x, y] = line_.point(u);
      return evaluate(field_, x, y);
    }
    return cosine_series(series_, kPi * u);
  }

 private:
  const FieldRealization& field_;
  LineSpec line_;
  std::vector<double> series_;
};

}  // namespace

double default_step(const DomainSpec& domain) { return domain.epsilon / 50.0; }

std::vector<double> sample_along_line(const FieldRealization& field, const LineSpec& line,
                                      double step) {
  line.validate();
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const auto [lo, hi] = line.parameter_interval();
  const auto m = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  const double h = (hi - lo) / static_cast<double>(m);
  const LineSampler f(field, line);
  std::vector<double> values(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    values[i] = f(i == m ? hi : lo + static_cast<double>(i) * h);
  }
  return values;
}

int count_sign_changes(const std::vector<double>& samples) {
  int changes = 0;
  int previous = 1;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = samples[i];
    const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : previous);
    if (i > 0 && sign != previous) ++changes;
    previous = sign;
  }
  return changes;
}

int count_zeros_on_line(const FieldRealization& field, const LineSpec& line, double step) {
  check_step(field, step);
  return count_sign_changes(sample_along_line(field, line, step));
}

std::vector<double> zero_positions(const FieldRealization& field, const LineSpec& line,
                                   double step) {
  check_step(field, step);
  const auto samples = sample_along_line(field, line, step);
  const auto [lo, hi] = line.parameter_interval();
  const double h = (hi - lo) / static_cast<double>(samples.size() - 1);
  const LineSampler f(field, line);
  std::vector<double> roots;
  int previous = 1;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = samples[i];
    const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : previous);
    if (i > 0 && sign != previous) {
      double a = lo + static_cast<double>(i - 1) * h;
      double b = i + 1 == samples.size() ? hi : lo + static_cast<double>(i) * h;
      while (b - a > 1e-12) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        const int sm = fm > 0.0 ? 1 : (fm < 0.0 ? -1 : previous);
        if (sm == previous) {
          a = mid;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    previous = sign;
  }
  return roots;
}

ZeroCountReport sample_report(const DomainSpec& domain, const LineFamily& family,
                              int n_realizations, std::uint64_t base_seed, double step,
                              int threads, int predicted_panels) {
  if (n_realizations < 1) throw std::invalid_argument("need at least one realization");
  if (family.n_lines < 1) throw std::invalid_argument("need at least one line per realization");

  ZeroCountReport report;
  report.domain = domain;
  report.family = family;
  report.n_realizations = n_realizations;
  report.n_lines_per_realization = family.n_lines;
  report.step = step;
  report.base_seed = base_seed;

  const auto total = static_cast<std::size_t>(n_realizations) * family.n_lines;
  report.realization.resize(total);
  report.line_params.resize(total);
  report.counts.resize(total);

  parallel_for(static_cast<std::size_t>(n_realizations), threads, [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(base_seed, r);
    const auto field = sample_field(domain, seed);
    for (int j = 0; j < family.n_lines; ++j) {
      const std::size_t slot = r * family.n_lines + j;
      const double offset =
          kOffsetLo + (kOffsetHi - kOffsetLo) * counter_uniform(seed, kLineStream, j);
      report.realization[slot] = static_cast<int>(r);
      report.line_params[slot] = offset;
      report.counts[slot] = count_zeros_on_line(field, family.line(offset), step);
    }
  });

  const double n = static_cast<double>(total);
  CompensatedSum sum;
  for (int c : report.counts) sum += c;
  report.mean = sum.value() / n;
  if (total > 1) {
    CompensatedSum sq;
    for (int c : report.counts) sq += (c - report.mean) * (c - report.mean);
    report.std_error = std::sqrt(sq.value() / (n - 1.0)) / std::sqrt(n);
  }
  report.predicted =
      KostlanEngine(domain).expected_zero_count(family.line(0.5), predicted_panels, threads);
  return report;
}

}  // namespace nodalgauge
