#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "nodalgauge/io.hpp"
#include "oracles.hpp"

using namespace nodalgauge;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream is(text);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) parts.push_back(item);
  return parts;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("nodalgauge-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

}  // namespace

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 5000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    ++checked;
  }
  for (double v : {0.0, -0.0, 1.0 / 3.0, 5e-324, std::numeric_limits<double>::max(), 0.1}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("CSV round trips") {
  const auto f = sample_field({QuarterRing{0.7}, 0.05}, 12);
  const auto grid = evaluate_grid(f, 17);
  std::stringstream ss;
  write_provenance(ss, {{"seed", "12"}});
  write_grid_csv(ss, grid);
  const auto back = read_grid_csv(ss);
  CHECK(back.resolution == grid.resolution);
  CHECK(back.values == grid.values);

  const KostlanEngine engine({QuarterRing{0.8}, 0.02});
  const std::vector<double> xs{0.1, 0.2, 1.0 / 3.0, 0.9};
  const auto prof = engine.profile(LineSpec::horizontal(0.5), xs);
  std::stringstream ps;
  write_profile_csv(ps, prof);
  CHECK(ps.str().find("x,delta,eps_delta") != std::string::npos);
  const auto pback = read_profile_csv(ps);
  CHECK(pback.xs == prof.xs);
  CHECK(pback.deltas == prof.deltas);
  CHECK(pback.epsilon == prof.epsilon);
}

TEST_CASE("PGM layout") {
  GridSample grid;
  grid.resolution = 3;
  // values[i*n+j] = f(x_i, y_j); positive only at x = 0, y = 1 (top-left pixel).
  grid.values = {-1, -1, 2, -1, -1, -1, -1, -1, -1};
  const auto px = grid_pixels(grid, PgmMode::sign);
  REQUIRE(px.size() == 9);
  CHECK(px[0] == 255);
  for (std::size_t i = 1; i < 9; ++i) CHECK(px[i] == 0);
  const auto gray = grid_pixels(grid, PgmMode::gray);
  CHECK(gray[0] == 255);
  CHECK(gray[4] == 0);

  std::ostringstream os;
  write_pgm(os, grid, PgmMode::sign, {"seed=1"});
  const std::string pgm = os.str();
  CHECK(pgm.rfind("P5\n# seed=1\n3 3\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n# seed=1\n3 3\n255\n").size() + 9);
}

TEST_CASE("table subcommand") {
  const auto r = run_cli({"table", "--gamma", "0.7", "--eps", "0.01"});
  REQUIRE(r.code == 0);
  const auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "ring,1,15.915,0.062832");
  CHECK(rows[1] == "q1,1.032,16.167,0.061856");
  CHECK(rows[2] == "q2,1.891,21.887,0.045690");
  CHECK(rows[3] == "q3_hor,1.891,21.887,0.045690");
  CHECK(rows[4] == "q3_ver,5.374,36.894,0.027105");
  CHECK(r.out.find("# gamma=0.7") != std::string::npos);

  SUBCASE("coefficients against quadrature at gamma = 0.5") {
    const auto full = data_lines(run_cli({"table", "--gamma", "0.5", "--eps", "0.01", "--full-precision"}).out);
    REQUIRE(full.size() == 5);
    const long double g = 0.5L;
    const long double ap = std::sqrt((1 + std::sqrt(1 - g)) / (2 * oracle::kPiL * oracle::kPiL));
    const long double am = std::sqrt((1 - std::sqrt(1 - g)) / (2 * oracle::kPiL * oracle::kPiL));
    auto rect_coeff = [](long double x0, long double x1, long double y0, long double y1, bool vertical) {
      auto sq = [](long double u) { return u * u; };
      auto one = [](long double) { return 1.0L; };
      const long double a = vertical ? oracle::midpoint_2d_product(x0, x1, y0, y1, 20000, 20000, one, sq)
                                     : oracle::midpoint_2d_product(x0, x1, y0, y1, 20000, 20000, sq, one);
      const long double area = oracle::midpoint_2d_product(x0, x1, y0, y1, 10, 10, one, one);
      return 4 * oracle::kPiL * oracle::kPiL * a / area;
    };
    // Polar: int cos^2 = pi/4, so lambda_a / lambda = (int r^3) / (2 int r) over (am, ap).
    long double r3 = 0, r1 = 0;
    const int n = 200000;
    const long double h = (ap - am) / n;
    for (int i = 0; i < n; ++i) {
      const long double r = am + (i + 0.5L) * h;
      r3 += r * r * r * h;
      r1 += r * h;
    }
    const long double expected[] = {
        4 * oracle::kPiL * oracle::kPiL * r3 / (2 * r1),
        rect_coeff(0, ap, 0, ap, false),
        rect_coeff(am, ap, am, ap, false),
        rect_coeff(am, ap, 2 * am, am + ap, false),
        rect_coeff(am, ap, 2 * am, am + ap, true),
    };
    for (int i = 0; i < 5; ++i) {
      const double coeff = std::stod(split(full[i])[1]);
      CHECK(coeff == doctest::Approx(static_cast<double>(expected[i])).epsilon(1e-8));
    }
  }
  SUBCASE("q2 coefficient tends to 2 as gamma -> 1") {
    const auto full = data_lines(run_cli({"table", "--gamma", "0.999999", "--eps", "0.01", "--full-precision"}).out);
    CHECK(std::stod(split(full[2])[1]) == doctest::Approx(2.0).epsilon(1e-3));
  }
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"table", "--gamma", "1.5"}).code == 2);
  CHECK(run_cli({"table", "--gamma", "0"}).code == 2);
  CHECK(run_cli({"table", "--bogus"}).code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"density", "--domain", "ring:"}).code == 2);
  CHECK(run_cli({"density", "--line", "d:0.5"}).code == 2);
  CHECK(run_cli({"montecarlo", "--step-frac", "10"}).code == 2);
  CHECK(run_cli({"render", "--grid", "32", "--out", "x.pgm"}).code == 2);
  CHECK(run_cli({"render"}).code == 2);
  CHECK(run_cli({"count", "--domain", "ring:0.5", "--eps", "0.5"}).code == 1);
  CHECK(run_cli({"table", "--out", "/nonexistent-dir/sub/table.csv"}).code == 1);
  CHECK(run_cli({"--version"}).code == 0);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("parsers") {
  const auto ring = std::get<QuarterRing>(cli::parse_shape("ring:0.8"));
  CHECK(ring.gamma == 0.8);
  const auto rect = std::get<Rect>(cli::parse_shape("rect:0,0.1,0.2,0.3"));
  CHECK(rect.eta_hi == 0.3);
  CHECK(std::holds_alternative<ShapeUnion>(cli::parse_shape("ring:0.8+rect:0,0.1,0.2,0.3")));
  const auto sloped = cli::parse_line("s:0.5,0.25");
  CHECK(sloped.kind == LineSpec::Kind::sloped);
  CHECK(sloped.tau == 0.25);
  CHECK(cli::parse_line("v:0.3").kind == LineSpec::Kind::vertical);
  CHECK(cli::parse_list("1,2.5,1e-3") == std::vector<double>{1, 2.5, 1e-3});
  CHECK_THROWS_AS(cli::parse_shape("disk:1"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_line("h:"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_list("1,,2"), cli::UsageError);
}

TEST_CASE("echo config") {
  const auto r = run_cli({"count", "--domain", "q2:0.7", "--eps", "0.02", "--echo-config"});
  CHECK(r.code == 0);
  CHECK(r.out.find("domain=q2:0.7") != std::string::npos);
  CHECK(r.out.find("eps=0.02") != std::string::npos);
}

TEST_CASE("outputs are byte identical across runs and thread counts") {
  TempDir dir;
  auto twice = [&](std::vector<std::string> args, const std::string& name) {
    auto a = args, b = args;
    a.insert(a.end(), {"--threads", "1", "--out", (dir / (name + "1")).string()});
    b.insert(b.end(), {"--threads", "3", "--out", (dir / (name + "2")).string()});
    REQUIRE(run_cli(a).code == 0);
    REQUIRE(run_cli(b).code == 0);
    CHECK(slurp(dir / (name + "1")) == slurp(dir / (name + "2")));
    CHECK(!slurp(dir / (name + "1")).empty());
  };
  twice({"density", "--domain", "ring:0.8", "--eps", "0.03,0.01", "--grid", "301"}, "density");
  twice({"montecarlo", "--domain", "q3:0.7", "--eps", "0.03", "--lines", "20", "--realizations", "5",
         "--seed", "8"},
        "mc");
  twice({"count", "--domain", "ring:0.7", "--eps", "0.02", "--line", "s:0.5,0.1"}, "count");
  twice({"ergodic", "--mode", "condition", "--domain", "q1:0.7", "--eps", "0.05,0.02"}, "ergodic");

  const auto p1 = (dir / "a.pgm").string(), p2 = (dir / "b.pgm").string();
  REQUIRE(run_cli({"render", "--domain", "ring:0.8", "--eps", "0.02", "--seed", "4", "--grid", "128",
                   "--out", p1, "--threads", "1"})
              .code == 0);
  REQUIRE(run_cli({"render", "--domain", "ring:0.8", "--eps", "0.02", "--seed", "4", "--grid", "128",
                   "--out", p2, "--threads", "4"})
              .code == 0);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  const std::string pgm = slurp(p1);
  CHECK(pgm.rfind("P5\n", 0) == 0);
  CHECK(pgm.find("\n128 128\n255\n") != std::string::npos);
}

TEST_CASE("density profiles") {
  SUBCASE("reflection symmetry at t = 1/2") {
    const auto r = run_cli({"density", "--domain", "ring:0.8", "--eps", "0.01", "--grid", "101"});
    REQUIRE(r.code == 0);
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() == 101);
    for (int i = 1; i < 50; ++i) {
      const double a = std::stod(split(rows[i])[1]);
      const double b = std::stod(split(rows[100 - i])[1]);
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
  }
  SUBCASE("interior plateau at eps = 10^-2.5") {
    const auto r = run_cli({"density", "--domain", "ring:0.8", "--eps", "0.0031622776601683794", "--grid", "11"});
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() == 11);
    for (int i = 2; i <= 8; ++i) {
      CHECK(std::stod(split(rows[i])[2]) == doctest::Approx(1 / (2 * kPi)).epsilon(0.02));
    }
  }
  SUBCASE("scale trace") {
    TempDir dir;
    const auto trace = (dir / "trace.csv").string();
    const auto r = run_cli({"density", "--domain", "ring:0.8", "--grid", "3", "--eps",
                            "0.031622776601683794,0.01,0.0031622776601683794,0.001", "--x0", "0.01,0.001",
                            "--trace-out", trace});
    REQUIRE(r.code == 0);
    std::map<double, std::vector<double>> columns;
    for (const auto& row : data_lines(slurp(trace))) {
      const auto parts = split(row);
      columns[std::stod(parts[1])].push_back(std::stod(parts[2]));
    }
    const auto& c2 = columns.at(0.01);
    REQUIRE(c2.size() == 4);
    bool monotone = true;
    for (std::size_t i = 1; i < c2.size(); ++i) monotone = monotone && c2[i] >= c2[i - 1];
    CHECK_FALSE(monotone);
    const auto& c3 = columns.at(0.001);
    CHECK(c3.front() < 0.1 / (2 * kPi));
  }
}
