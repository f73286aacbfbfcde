#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nodalgauge/domains.hpp"
#include "nodalgauge/kostlan.hpp"

namespace nodalgauge::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Bad flag values; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `ring:G`, `rect:XLO,XHI,YLO,YHI`, `q1:G`, `q2:G`, `q3:G`, joined by '+' for unions.
Shape parse_shape(const std::string& text);
/// `h:T`, `v:S` or `s:MU,TAU`.
LineSpec parse_line(const std::string& text);
std::vector<double> parse_list(const std::string& text);

/// Runs `nodal-gauge` with the given arguments (argv[0] excluded).
/// Returns 0 on success, 1 on runtime or I/O failure, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nodalgauge::cli
