#include "nodalgauge/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nodalgauge {

namespace {

std::vector<std::vector<double>> read_rows(std::istream& is, const std::string& header,
                                           std::vector<std::string>* comments = nullptr) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool seen_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (comments) comments->push_back(line);
      continue;
    }
    if (!seen_header) {
      if (line != header) throw std::runtime_error("unexpected CSV header: " + line);
      seen_header = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  if (!seen_header) throw std::runtime_error("missing CSV header " + header);
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_provenance(std::ostream& os, const Provenance& prov) {
  for (const auto& [key, value] : prov) os << "# " << key << '=' << value << '\n';
}

void write_grid_csv(std::ostream& os, const GridSample& grid) {
  os << "i,j,value\n";
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      os << i << ',' << j << ',' << format_double(grid.at(i, j)) << '\n';
    }
  }
}

GridSample read_grid_csv(std::istream& is) {
  const auto rows = read_rows(is, "i,j,value");
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
  if (static_cast<std::size_t>(n) * n != rows.size()) throw std::runtime_error("grid CSV is not square");
  GridSample grid{n, std::vector<double>(rows.size())};
  for (const auto& r : rows) {
    grid.values[static_cast<std::size_t>(r.at(0)) * n + static_cast<std::size_t>(r.at(1))] = r.at(2);
  }
  return grid;
}

void write_profile_csv(std::ostream& os, const DensityProfile& profile) {
  os << "# eps=" << format_double(profile.epsilon) << '\n';
  os << "x,delta,eps_delta\n";
  for (std::size_t i = 0; i < profile.xs.size(); ++i) {
    os << format_double(profile.xs[i]) << ',' << format_double(profile.deltas[i]) << ','
       << format_double(profile.epsilon * profile.deltas[i]) << '\n';
  }
}

DensityProfile read_profile_csv(std::istream& is) {
  std::vector<std::string> comments;
  const auto rows = read_rows(is, "x,delta,eps_delta", &comments);
  DensityProfile profile;
  for (const auto& c : comments) {
    if (c.rfind("# eps=", 0) == 0) profile.epsilon = std::strtod(c.c_str() + 6, nullptr);
  }
  for (const auto& r : rows) {
    profile.xs.push_back(r.at(0));
    profile.deltas.push_back(r.at(1));
  }
  return profile;
}

void write_averaging_csv(std::ostream& os, const AveragingReport& report) {
  os << "N_or_eps,value,target,abs_error\n";
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    os << format_double(report.cutoffs[i]) << ',' << format_double(report.values[i]) << ','
       << format_double(report.target) << ',' << format_double(report.abs_error(i)) << '\n';
  }
  os << "# converged=" << (report.converged ? "true" : "false") << '\n';
}

void write_counts_csv(std::ostream& os, const ZeroCountReport& report) {
  os << "realization,line_param,count\n";
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    os << report.realization[i] << ',' << format_double(report.line_params[i]) << ','
       << report.counts[i] << '\n';
  }
  os << "# summary\n";
  os << "# n_realizations=" << report.n_realizations << '\n';
  os << "# n_lines_per_realization=" << report.n_lines_per_realization << '\n';
  os << "# mean=" << format_double(report.mean) << '\n';
  os << "# stderr=" << format_double(report.std_error) << '\n';
  os << "# predicted=" << format_double(report.predicted) << '\n';
}

std::vector<std::uint8_t> grid_pixels(const GridSample& grid, PgmMode mode) {
  const int n = grid.resolution;
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(n) * n);
  double lo = 0.0;
  double hi = 0.0;
  if (mode == PgmMode::gray && !grid.values.empty()) {
    const auto [mn, mx] = std::minmax_element(grid.values.begin(), grid.values.end());
    lo = *mn;
    hi = *mx;
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double v = grid.at(c, n - 1 - r);
      std::uint8_t p = 0;
      if (mode == PgmMode::sign) {
        p = v >= 0.0 ? 255 : 0;
      } else if (hi > lo) {
        p = static_cast<std::uint8_t>(std::lround(255.0 * (v - lo) / (hi - lo)));
      }
      pixels[static_cast<std::size_t>(r) * n + c] = p;
    }
  }
  return pixels;
}

void write_pgm(std::ostream& os, const GridSample& grid, PgmMode mode,
               const std::vector<std::string>& comments) {
  os << "P5\n";
  for (const auto& c : comments) os << "# " << c << '\n';
  os << grid.resolution << ' ' << grid.resolution << "\n255\n";
  const auto pixels = grid_pixels(grid, mode);
  os.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace nodalgauge
