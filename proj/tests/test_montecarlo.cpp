#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nodalgauge/montecarlo.hpp"
#include "nodalgauge/random.hpp"

using namespace nodalgauge;

TEST_CASE("sign change counter") {
  CHECK(count_sign_changes({}) == 0);
  CHECK(count_sign_changes({1.0, -1.0, 2.0}) == 2);
  CHECK(count_sign_changes({0.0, -1.0}) == 1);
  // A touching zero contributes 0 or 2, never 1.
  CHECK(count_sign_changes({1.0, 0.0, 1.0}) == 0);
  CHECK(count_sign_changes({-1.0, 0.0, -1.0}) == 0);
  CHECK(count_sign_changes({-1.0, 0.0, 1.0}) == 1);
}

TEST_CASE("zero field has no zeros") {
  const DomainSpec d{QuarterRing{0.7}, 0.05};
  const auto f = make_field(d, std::vector<double>(enumerate_modes(d).size(), 0.0));
  CHECK(count_zeros_on_line(f, LineSpec::horizontal(0.3), 0.05 / 20) == 0);
  CHECK(count_zeros_on_line(f, LineSpec::sloped(0.5, 0.2), 0.05 / 20) == 0);
}

TEST_CASE("single mode (7,3)") {
  const double eps = 0.01;
  const DomainSpec d{Rect{6.5 * eps, 7.5 * eps, 2.5 * eps, 3.5 * eps}, eps};
  REQUIRE(enumerate_modes(d) == std::vector<WaveVector>{{7, 3}});
  const auto f = make_field(d, {1.0});
  const auto line = LineSpec::horizontal(0.1);
  CHECK(count_zeros_on_line(f, line, eps / 20) == 7);
  CHECK(count_zeros_on_line(f, line, eps / 50) == 7);
  const auto roots = zero_positions(f, line, eps / 50);
  REQUIRE(roots.size() == 7);
  for (int j = 0; j < 7; ++j) CHECK(std::abs(roots[j] - (2 * j + 1) / 14.0) < 1e-10);
  // cos(3 pi y) on a vertical line has 3 roots.
  CHECK(count_zeros_on_line(f, LineSpec::vertical(0.2), eps / 20) == 3);
  CHECK_THROWS_WITH_AS(count_zeros_on_line(f, line, eps / 10), "step exceeds resolution bound",
                       std::invalid_argument);
  CHECK_THROWS_AS(count_zeros_on_line(f, line, 0.0), std::invalid_argument);
}

TEST_CASE("sampling covers the whole segment") {
  const DomainSpec d{QuarterRing{0.7}, 0.05};
  const auto f = sample_field(d, 4);
  const auto line = LineSpec::vertical(0.42);
  const auto values = sample_along_line(f, line, 0.003);
  CHECK(values.size() == 335);  // ceil(1 / 0.003) + 1
  CHECK(values.front() == doctest::Approx(evaluate(f, 0.42, 0.0)).epsilon(1e-11));
  CHECK(values.back() == doctest::Approx(evaluate(f, 0.42, 1.0)).epsilon(1e-11));
  const auto sloped = sample_along_line(f, LineSpec::sloped(0.5, 0.5), 0.01);
  CHECK(sloped.back() == doctest::Approx(evaluate(f, 1.0, 1.0)).epsilon(1e-11));
}

TEST_CASE("step refinement is stable") {
  const double eps = 0.02;
  const DomainSpec d{QuarterRing{0.7}, eps};
  int changed = 0, decreased = 0, total = 0;
  for (int r = 0; r < 50; ++r) {
    const auto f = sample_field(d, derive_seed(808, r));
    for (int j = 0; j < 20; ++j) {
      const double offset = 0.001 + 0.998 * counter_uniform(derive_seed(808, r), 9, j);
      const auto line = j % 2 ? LineSpec::vertical(offset) : LineSpec::horizontal(offset);
      const int coarse = count_zeros_on_line(f, line, eps / 20);
      const int fine = count_zeros_on_line(f, line, eps / 40);
      changed += coarse != fine;
      decreased += fine < coarse;
      ++total;
    }
  }
  CHECK(total == 1000);
  CHECK(changed <= 10);
  CHECK(decreased <= 5);
}

TEST_CASE("sample report") {
  const DomainSpec d{q2_shape(0.7), 0.02};
  const LineFamily family{LineFamily::Orientation::vertical, 50};
  const auto a = sample_report(d, family, 20, 99, default_step(d), 1);
  SUBCASE("deterministic across thread counts") {
    const auto b = sample_report(d, family, 20, 99, default_step(d), 3);
    CHECK(a.counts == b.counts);
    CHECK(a.line_params == b.line_params);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.predicted == b.predicted);
    const auto c = sample_report(d, family, 20, 100, default_step(d), 1);
    CHECK(a.counts != c.counts);
  }
  SUBCASE("summary statistics") {
    REQUIRE(a.counts.size() == 1000);
    double sum = 0;
    for (int c : a.counts) {
      CHECK(c >= 0);
      sum += c;
    }
    const double mean = sum / 1000;
    double sq = 0;
    for (int c : a.counts) sq += (c - mean) * (c - mean);
    CHECK(a.mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(a.std_error == doctest::Approx(std::sqrt(sq / 999) / std::sqrt(1000.0)).epsilon(1e-12));
    for (std::size_t i = 0; i < a.counts.size(); ++i) {
      CHECK(a.realization[i] == static_cast<int>(i / 50));
      CHECK((a.line_params[i] > 0.001 && a.line_params[i] < 0.999));
    }
    CHECK(a.predicted == doctest::Approx(KostlanEngine(d).expected_zero_count(LineSpec::vertical(0.5))));
  }
  SUBCASE("sample mean tracks the Kostlan integral") {
    // Lines within one realization share coefficients, so the standard
    // error is taken over realization means.
    const KostlanEngine engine(d);
    double expected = 0;
    for (double s : a.line_params) expected += engine.expected_zero_count(LineSpec::vertical(s), 400);
    expected /= static_cast<double>(a.line_params.size());
    std::vector<double> means(20, 0.0);
    for (std::size_t i = 0; i < a.counts.size(); ++i) means[a.realization[i]] += a.counts[i] / 50.0;
    double sq = 0;
    for (double m : means) sq += (m - a.mean) * (m - a.mean);
    const double cluster_se = std::sqrt(sq / 19) / std::sqrt(20.0);
    CHECK(std::abs(a.mean - expected) < 4 * cluster_se);
  }
  SUBCASE("single count") {
    const auto one = sample_report(d, {LineFamily::Orientation::horizontal, 1}, 1, 5, default_step(d));
    const auto again = sample_report(d, {LineFamily::Orientation::horizontal, 1}, 1, 5, default_step(d));
    CHECK(one.counts.size() == 1);
    CHECK(one.counts == again.counts);
    CHECK(one.std_error == 0.0);
  }
  CHECK_THROWS_AS(sample_report(d, family, 0, 1, default_step(d)), std::invalid_argument);
  CHECK_THROWS_AS(sample_report(d, {LineFamily::Orientation::vertical, 0}, 1, 1, default_step(d)),
                  std::invalid_argument);
}
