#include "nodalgauge/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "nodalgauge/random.hpp"

namespace nodalgauge {

namespace {

constexpr std::uint64_t kCoefficientStream = 1;

int max_index(const std::vector<WaveVector>& modes, bool use_l) {
  int m = 0;
  for (const auto& kv : modes) m = std::max(m, use_l ? kv.l : kv.k);
  return m;
}

std::vector<double> cos_table(int max_n, double x) {
  std::vector<double> out(static_cast<std::size_t>(max_n) + 1);
  for (int n = 0; n <= max_n; ++n) out[n] = std::cos(n * kPi * x);
  return out;
}

}  // namespace

FieldRealization sample_field(const DomainSpec& domain, std::uint64_t seed) {
  FieldRealization field{domain, enumerate_modes(domain), {}, seed};
  if (field.modes.empty()) throw std::invalid_argument("empty mode set");
  field.coeffs.resize(field.modes.size());
  for (std::size_t i = 0; i < field.coeffs.size(); ++i) {
    field.coeffs[i] = counter_normal(seed, kCoefficientStream, i);
  }
  return field;
}

FieldRealization make_field(const DomainSpec& domain, std::vector<double> coeffs,
                            std::uint64_t seed) {
  FieldRealization field{domain, enumerate_modes(domain), std::move(coeffs), seed};
  if (field.modes.empty()) throw std::invalid_argument("empty mode set");
  if (field.coeffs.size() != field.modes.size()) {
    throw std::invalid_argument("coefficient count does not match mode count");
  }
  return field;
}

double evaluate(const FieldRealization& field, double x, double y) {
  const auto cy = cos_table(max_index(field.modes, true), y);
  double total = 0.0;
  std::size_t i = 0;
  while (i < field.modes.size()) {
    const int k = field.modes[i].k;
    double inner = 0.0;
    for (; i < field.modes.size() && field.modes[i].k == k; ++i) {
      inner += field.coeffs[i] * cy[field.modes[i].l];
    }
    total += std::cos(k * kPi * x) * inner;
  }
  return total;
}

GridSample evaluate_grid(const FieldRealization& field, int n) {
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (static_cast<long long>(n) * n > (1LL << 30)) {
    throw std::length_error("grid resolution too large");
  }
  const int k_max = max_index(field.modes, false);
  const int l_max = max_index(field.modes, true);
  const int m_max = std::max(k_max, l_max);
  const auto un = static_cast<std::size_t>(n);

  // table[m * n + i] = cos(m pi i / (n-1))
  std::vector<double> table((static_cast<std::size_t>(m_max) + 1) * un);
  for (int m = 0; m <= m_max; ++m) {
    for (int i = 0; i < n; ++i) {
      table[m * un + i] = std::cos(m * kPi * (double(i) / (n - 1)));
    }
  }

  // partial[k * n + j] = sum_l c_{k,l} cos(l pi y_j)
  std::vector<double> partial((static_cast<std::size_t>(k_max) + 1) * un, 0.0);
  for (std::size_t idx = 0; idx < field.modes.size(); ++idx) {
    const auto [k, l] = field.modes[idx];
    const double c = field.coeffs[idx];
    double* row = &partial[k * un];
    const double* cl = &table[l * un];
    for (std::size_t j = 0; j < un; ++j) row[j] += c * cl[j];
  }

  GridSample grid{n, std::vector<double>(un * un, 0.0)};
  for (int k = 1; k <= k_max; ++k) {
    const double* row = &partial[k * un];
    const double* ck = &table[k * un];
    for (std::size_t i = 0; i < un; ++i) {
      double* out = &grid.values[i * un];
      const double a = ck[i];
      for (std::size_t j = 0; j < un; ++j) out[j] += a * row[j];
    }
  }
  return grid;
}

std::vector<double> restrict_vertical(const FieldRealization& field, double s) {
  const auto ck = cos_table(max_index(field.modes, false), s);
  std::vector<double> b(static_cast<std::size_t>(max_index(field.modes, true)) + 1, 0.0);
  for (std::size_t i = 0; i < field.modes.size(); ++i) {
    b[field.modes[i].l] += field.coeffs[i] * ck[field.modes[i].k];
  }
  return b;
}

std::vector<double> restrict_horizontal(const FieldRealization& field, double t) {
  const auto cl = cos_table(max_index(field.modes, true), t);
  std::vector<double> b(static_cast<std::size_t>(max_index(field.modes, false)) + 1, 0.0);
  for (std::size_t i = 0; i < field.modes.size(); ++i) {
    b[field.modes[i].k] += field.coeffs[i] * cl[field.modes[i].l];
  }
  return b;
}

double cosine_series(std::span<const double> b, double theta) {
  const double two_c = 2.0 * std::cos(theta);
  double y1 = 0.0;
  double y2 = 0.0;
  for (std::size_t n = b.size(); n-- > 1;) {
    const double y = b[n] + two_c * y1 - y2;
    y2 = y1;
    y1 = y;
  }
  return y1 * std::cos(theta) - y2;
}

double covariance_q(const DomainSpec& domain, double z1, double z2) {
  const ModeLattice lattice(domain);
  if (lattice.empty()) throw std::invalid_argument("empty mode set");
  double total = 0.0;
  for (const auto& run : lattice.runs()) {
    const double ck = std::cos(run.k * kPi * z1);
    for (int l = run.l_lo; l <= run.l_hi; ++l) total += ck * std::cos(l * kPi * z2);
  }
  return 0.5 * total;
}

double covariance_q(const DomainSpec& domain, double z) { return covariance_q(domain, z, z); }

double covariance_exact(const DomainSpec& domain, double x1, double y1, double x2, double y2) {
  const ModeLattice lattice(domain);
  if (lattice.empty()) throw std::invalid_argument("empty mode set");
  double total = 0.0;
  for (const auto& run : lattice.runs()) {
    const double kx = std::cos(run.k * kPi * x1) * std::cos(run.k * kPi * x2);
    for (int l = run.l_lo; l <= run.l_hi; ++l) {
      total += kx * std::cos(l * kPi * y1) * std::cos(l * kPi * y2);
    }
  }
  return total;
}

}  // namespace nodalgauge
