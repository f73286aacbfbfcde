#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nodalgauge/ergodic.hpp"
#include "nodalgauge/field.hpp"
#include "nodalgauge/kostlan.hpp"
#include "nodalgauge/montecarlo.hpp"

namespace nodalgauge {

/// Shortest text that is guaranteed to parse back to the same double ("%.17g").
std::string format_double(double v);

/// Ordered key/value pairs written as "# key=value" comment lines.
using Provenance = std::vector<std::pair<std::string, std::string>>;

void write_provenance(std::ostream& os, const Provenance& prov);

// CSV writers. Comment lines start with '#'; readers skip them.

void write_grid_csv(std::ostream& os, const GridSample& grid);
GridSample read_grid_csv(std::istream& is);

/// Header `x,delta,eps_delta`.
void write_profile_csv(std::ostream& os, const DensityProfile& profile);
DensityProfile read_profile_csv(std::istream& is);

/// Header `N_or_eps,value,target,abs_error`.
void write_averaging_csv(std::ostream& os, const AveragingReport& report);

/// Header `realization,line_param,count`, then a summary comment block.
void write_counts_csv(std::ostream& os, const ZeroCountReport& report);

enum class PgmMode { sign, gray };

/// Image pixels, top row first: pixel (row r, column c) shows grid point
/// (i = c, j = n-1-r), so y grows upwards. Sign mode maps f >= 0 to 255 and
/// f < 0 to 0; gray mode rescales [min, max] affinely onto [0, 255].
std::vector<std::uint8_t> grid_pixels(const GridSample& grid, PgmMode mode);

/// Binary PGM (P5) with optional comment lines in the header.
void write_pgm(std::ostream& os, const GridSample& grid, PgmMode mode,
               const std::vector<std::string>& comments = {});

}  // namespace nodalgauge
