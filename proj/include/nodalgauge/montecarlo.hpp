#pragma once

#include <cstdint>
#include <vector>

#include "nodalgauge/domains.hpp"
#include "nodalgauge/field.hpp"
#include "nodalgauge/kostlan.hpp"

namespace nodalgauge {

/// Uniformly drawn axis-aligned lines; offsets are uniform on (0.001, 0.999).
struct LineFamily {
  enum class Orientation { horizontal, vertical };

  Orientation orientation = Orientation::vertical;
  int n_lines = 1;

  LineSpec line(double offset) const {
    return orientation == Orientation::vertical ? LineSpec::vertical(offset)
                                                : LineSpec::horizontal(offset);
  }
};

struct ZeroCountReport {
  DomainSpec domain;
  LineFamily family;
  int n_realizations = 0;
  int n_lines_per_realization = 0;
  double step = 0.0;
  std::uint64_t base_seed = 0;
  // Flattened in (realization, line) order.
  std::vector<int> realization;
  std::vector<double> line_params;
  std::vector<int> counts;
  double mean = 0.0;
  double std_error = 0.0;
  double predicted = 0.0;
};

/// Default sampling step eps / 50.
double default_step(const DomainSpec& domain);

/// Field values at m+1 uniformly spaced parameters of the clipped line,
/// where m = ceil(length_in_parameter / step).
std::vector<double> sample_along_line(const FieldRealization& field, const LineSpec& line,
                                      double step);

/// Number of sign changes between consecutive samples. An exact zero sample
/// takes the sign of its predecessor (the first sample counts as positive).
int count_sign_changes(const std::vector<double>& samples);

/// Sign changes of the field along the line, sampled with the given step
/// (0 < step <= eps/20).
int count_zeros_on_line(const FieldRealization& field, const LineSpec& line, double step);

/// Parameters of the counted crossings, each refined by bisection to 1e-12.
std::vector<double> zero_positions(const FieldRealization& field, const LineSpec& line,
                                   double step);

ZeroCountReport sample_report(const DomainSpec& domain, const LineFamily& family,
                              int n_realizations, std::uint64_t base_seed, double step,
                              int threads = 1, int predicted_panels = 2000);

}  // namespace nodalgauge
