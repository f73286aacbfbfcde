#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "nodalgauge/ergodic.hpp"
#include "nodalgauge/field.hpp"
#include "nodalgauge/io.hpp"
#include "nodalgauge/montecarlo.hpp"
#include "nodalgauge/parallel.hpp"

namespace nodalgauge::cli {

namespace {

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

std::vector<double> numbers_after(const std::string& text, std::size_t expected,
                                  const std::string& what) {
  auto values = parse_list(text);
  if (values.size() != expected) {
    throw UsageError(what + " expects " + std::to_string(expected) + " value(s)");
  }
  return values;
}

BasicShape parse_basic(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("domain needs the form KIND:PARAMS");
  const std::string kind = text.substr(0, colon);
  const std::string params = text.substr(colon + 1);
  if (kind == "rect") {
    const auto v = numbers_after(params, 4, "rect");
    return Rect{v[0], v[1], v[2], v[3]};
  }
  const double gamma = numbers_after(params, 1, kind)[0];
  if (!(gamma > 0.0 && gamma < 1.0)) throw UsageError("gamma must lie in (0,1)");
  if (kind == "ring") return QuarterRing{gamma};
  if (kind == "q1") return q1_shape(gamma);
  if (kind == "q2") return q2_shape(gamma);
  if (kind == "q3") return q3_shape(gamma);
  throw UsageError("unknown domain kind '" + kind + "'");
}

double parse_positive(const std::string& text, const std::string& what) {
  const double v = parse_number(text);
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(what + " must be positive");
  return v;
}

// Output sink: "-" is the caller's stream, anything else a binary file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }
  void close() {
    os_->flush();
    if (!*os_) throw std::runtime_error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

// Echo of every parameter that influences results (output paths and thread counts do not).
Provenance provenance(const CLI::App& sub) {
  Provenance prov{{"nodal-gauge", kVersion}, {"subcommand", sub.get_name()}};
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt == sub.get_help_ptr() || opt == sub.get_help_all_ptr()) continue;
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--threads" || name == "--out" ||
        name == "--trace-out" || name == "--csv" || name == "--echo-config") {
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
      if (opt->get_expected_max() == 0) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_expected_max() == 0) value = "false";
    }
    prov.emplace_back(name.substr(2), value);
  }
  return prov;
}

struct Common {
  std::string out = "-";
  int threads = 1;
  bool echo = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output path ('-' for stdout)");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--echo-config", c.echo, "Print the normalized parameter set");
}

std::string line_label(const LineSpec& line) {
  switch (line.kind) {
    case LineSpec::Kind::horizontal: return "h:" + format_double(line.offset);
    case LineSpec::Kind::vertical: return "v:" + format_double(line.offset);
    case LineSpec::Kind::sloped:
      return "s:" + format_double(line.mu) + "," + format_double(line.tau);
  }
  return "";
}

DomainSpec make_domain(const std::string& shape, const std::string& eps) {
  DomainSpec domain{parse_shape(shape), parse_positive(eps, "--eps")};
  try {
    domain.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return domain;
}

std::string csv_companion(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ".csv";
  return path.substr(0, dot) + ".csv";
}

}  // namespace

Shape parse_shape(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) parts.push_back(part);
  if (parts.empty()) throw UsageError("empty domain");
  if (parts.size() == 1) {
    return std::visit([](const auto& s) -> Shape { return s; }, parse_basic(parts[0]));
  }
  ShapeUnion u;
  for (const auto& p : parts) u.parts.push_back(parse_basic(p));
  return u;
}

LineSpec parse_line(const std::string& text) {
  if (text.size() < 3 || text[1] != ':') throw UsageError("line needs the form h:T, v:S or s:MU,TAU");
  const std::string params = text.substr(2);
  LineSpec line;
  switch (text[0]) {
    case 'h': line = LineSpec::horizontal(numbers_after(params, 1, "h")[0]); break;
    case 'v': line = LineSpec::vertical(numbers_after(params, 1, "v")[0]); break;
    case 's': {
      const auto v = numbers_after(params, 2, "s");
      line = LineSpec::sloped(v[0], v[1]);
      break;
    }
    default: throw UsageError("unknown line kind '" + text.substr(0, 1) + "'");
  }
  try {
    line.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return line;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected zero densities and pattern sizes of Gaussian random cosine series",
               "nodal-gauge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.option_defaults()->always_capture_default();

  std::string domain_text = "ring:0.8";
  std::string eps_text = "0.01";
  std::string line_text = "h:0.5";
  std::uint64_t seed = 0;
  int grid = 0;
  int panels = 2000;
  double step_frac = 50.0;
  Common common;

  // modes
  auto* modes = app.add_subcommand("modes", "List the lattice points of a scaled Fourier domain");
  bool from_spectrum = false;
  double fprime = 1.0;
  modes->add_option("--domain", domain_text, "Domain shape");
  modes->add_option("--eps", eps_text, "Scale epsilon");
  modes->add_flag("--from-spectrum", from_spectrum,
                  "Select modes by eigenvalue threshold (ring domains only)");
  modes->add_option("--fprime", fprime, "f'(m) for the spectral selection");
  add_common(modes, common);

  // density
  auto* density = app.add_subcommand("density", "Expected zero density profiles along a line");
  std::string x0_text;
  std::string trace_out;
  int density_points = 1001;
  density->add_option("--domain", domain_text, "Domain shape");
  density->add_option("--eps", eps_text, "Comma separated list of scales");
  density->add_option("--line", line_text, "Line h:T, v:S or s:MU,TAU");
  density->add_option("--grid", density_points, "Profile points per scale")
      ->check(CLI::Range(2, 10000000));
  density->add_option("--x0", x0_text, "Comma separated fixed parameters for the scale trace");
  density->add_option("--trace-out", trace_out, "Output path of the scale trace");
  add_common(density, common);

  // count
  auto* count = app.add_subcommand("count", "Expected zero count and pattern size on a line");
  count->add_option("--domain", domain_text, "Domain shape");
  count->add_option("--eps", eps_text, "Scale epsilon");
  count->add_option("--line", line_text, "Line h:T, v:S or s:MU,TAU");
  count->add_option("--panels", panels, "Midpoint quadrature panels")->check(CLI::Range(16, 100000000));
  add_common(count, common);

  // montecarlo
  auto* mc = app.add_subcommand("montecarlo", "Sampled zero counts on random lines");
  std::string orientation = "v";
  int n_lines = 200;
  int n_realizations = 30;
  mc->add_option("--domain", domain_text, "Domain shape");
  mc->add_option("--eps", eps_text, "Scale epsilon");
  mc->add_option("--orientation", orientation, "Line family: h or v")
      ->check(CLI::IsMember({"h", "v"}));
  mc->add_option("--lines", n_lines, "Lines per realization")->check(CLI::PositiveNumber);
  mc->add_option("--realizations", n_realizations, "Field realizations")->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed, "Base seed");
  mc->add_option("--step-frac", step_frac, "Sampling step is eps / STEP_FRAC (>= 20)");
  mc->add_option("--panels", panels, "Quadrature panels of the prediction")
      ->check(CLI::Range(16, 100000000));
  add_common(mc, common);

  // ergodic
  auto* ergodic = app.add_subcommand("ergodic", "Birkhoff and weighted lattice averages");
  std::string mode = "birkhoff";
  double x = 1.0 / std::sqrt(2.0);
  std::string ns_text = "10,100,1000,10000,100000,1000000";
  int power = 2;
  std::string weight_text = "0,0";
  std::string probe_text;
  std::string integrand_text = "cos2cos2";
  double tolerance = 0.02;
  ergodic->add_option("--mode", mode, "birkhoff, weighted or condition")
      ->check(CLI::IsMember({"birkhoff", "weighted", "condition"}));
  ergodic->add_option("--x", x, "Rotation number");
  ergodic->add_option("--ns", ns_text, "Comma separated cutoffs N");
  ergodic->add_option("--p", power, "Weight exponent k^p")->check(CLI::Range(0, 2));
  ergodic->add_option("--domain", domain_text, "Domain shape (condition mode)");
  ergodic->add_option("--eps", eps_text, "Comma separated decreasing scales (condition mode)");
  ergodic->add_option("--weight", weight_text, "Mode weight P,Q (condition mode)");
  ergodic->add_option("--probe", probe_text, "Probe point X,T (condition mode)");
  ergodic->add_option("--integrand", integrand_text, "cos2cos2, sin2cos2 or cossincos2")
      ->check(CLI::IsMember({"cos2cos2", "sin2cos2", "cossincos2"}));
  ergodic->add_option("--tolerance", tolerance, "Final error bound for convergence");
  add_common(ergodic, common);

  // render
  auto* render = app.add_subcommand("render", "Sign image of one field realization");
  std::string csv_path;
  std::string image_mode = "sign";
  grid = 512;
  render->add_option("--domain", domain_text, "Domain shape");
  render->add_option("--eps", eps_text, "Scale epsilon");
  render->add_option("--seed", seed, "Realization seed");
  render->add_option("--grid", grid, "Image resolution (>= 64)")->check(CLI::Range(64, 32768));
  render->add_option("--image", image_mode, "sign or gray")->check(CLI::IsMember({"sign", "gray"}));
  render->add_option("--csv", csv_path, "Companion grid CSV (default: OUT with .csv)");
  add_common(render, common);

  // table
  auto* table = app.add_subcommand("table", "Asymptotic correction coefficients and zero counts");
  double gamma = 0.7;
  double table_eps = 0.01;
  bool full_precision = false;
  table->add_option("--gamma", gamma, "Growth fraction gamma in (0,1)");
  table->add_option("--eps", table_eps, "Scale epsilon");
  table->add_flag("--full-precision", full_precision, "Print 17 significant digits");
  add_common(table, common);

  std::vector<std::string> argv_store{"nodal-gauge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Provenance prov = provenance(*sub);
  if (common.echo) write_provenance(out, prov);

  try {
    if (sub == modes) {
      const auto domain = make_domain(domain_text, eps_text);
      std::vector<WaveVector> list;
      if (from_spectrum) {
        const auto* ring = std::get_if<QuarterRing>(&domain.shape);
        if (!ring) throw UsageError("--from-spectrum needs a ring domain");
        list = strong_set_from_spectrum({domain.epsilon, fprime, ring->gamma});
      } else {
        list = enumerate_modes(domain);
      }
      Sink sink(common.out, out);
      write_provenance(*sink, prov);
      *sink << "k,l\n";
      for (const auto& kv : list) *sink << kv.k << ',' << kv.l << '\n';
      *sink << "# modes=" << list.size() << '\n';
      if (!from_spectrum) {
        const ModeLattice lattice(domain);
        for (const WeightSpec w : {WeightSpec{2, 0}, WeightSpec{0, 2}}) {
          *sink << "# weighted_cardinality_" << w.p << '_' << w.q << '='
                << format_double(lattice.weighted_cardinality(w)) << '\n';
        }
      }
      sink.close();
    } else if (sub == density) {
      const Shape shape = parse_shape(domain_text);
      const auto epsilons = parse_list(eps_text);
      const LineSpec line = parse_line(line_text);
      std::vector<double> x0s;
      if (!x0_text.empty()) {
        x0s = parse_list(x0_text);
        if (trace_out.empty()) throw UsageError("--x0 needs --trace-out");
      }
      const auto [lo, hi] = line.parameter_interval();
      std::vector<double> params(static_cast<std::size_t>(density_points));
      for (int i = 0; i < density_points; ++i) {
        params[i] = i + 1 == density_points ? hi : lo + (hi - lo) * i / (density_points - 1);
      }
      Sink sink(common.out, out);
      write_provenance(*sink, prov);
      std::ostringstream trace;
      trace << "eps,x0,eps_delta\n";
      for (double eps : epsilons) {
        const KostlanEngine engine(make_domain(domain_text, format_double(eps)));
        DensityProfile profile{line, eps, params, std::vector<double>(params.size()), 0};
        std::vector<char> degenerate(params.size(), 0);
        parallel_for(params.size(), common.threads, [&](std::size_t i) {
          try {
            profile.deltas[i] = engine.density(line, params[i]);
          } catch (const std::domain_error&) {
            profile.deltas[i] = std::nan("");
            degenerate[i] = 1;
          }
        });
        write_profile_csv(*sink, profile);
        for (std::size_t i = 0; i < params.size(); ++i) {
          if (degenerate[i]) *sink << "# degenerate evaluation point x=" << format_double(params[i]) << '\n';
        }
        for (double x0 : x0s) {
          double value = std::nan("");
          try {
            value = eps * engine.density(line, x0);
          } catch (const std::domain_error&) {
          }
          trace << format_double(eps) << ',' << format_double(x0) << ',' << format_double(value) << '\n';
        }
      }
      sink.close();
      if (!x0s.empty()) {
        Sink tsink(trace_out, out);
        write_provenance(*tsink, prov);
        *tsink << trace.str();
        tsink.close();
      }
    } else if (sub == count) {
      const auto domain = make_domain(domain_text, eps_text);
      const LineSpec line = parse_line(line_text);
      const KostlanEngine engine(domain);
      const double zeros = engine.expected_zero_count(line, panels, common.threads);
      const double size = zeros > 0.0 ? line.length() / zeros : std::nan("");
      const double c_h = correction_coefficient(domain.shape, WeightSpec::horizontal());
      const double c_v = correction_coefficient(domain.shape, WeightSpec::vertical());
      const auto [lo, hi] = line.parameter_interval();
      double c = c_h;
      if (line.kind == LineSpec::Kind::vertical) c = c_v;
      if (line.kind == LineSpec::Kind::sloped) c = c_h + line.mu * line.mu * c_v;
      const double asym = std::sqrt(c) / (2.0 * kPi * domain.epsilon) * (hi - lo);
      Sink sink(common.out, out);
      write_provenance(*sink, prov);
      *sink << "line,panels,expected_zeros,pattern_size,asymptotic_zeros,asymptotic_pattern_size\n";
      *sink << line_label(line) << ',' << panels << ',' << format_double(zeros) << ','
            << format_double(size) << ',' << format_double(asym) << ','
            << format_double(line.length() / asym) << '\n';
      sink.close();
    } else if (sub == mc) {
      const auto domain = make_domain(domain_text, eps_text);
      if (!(step_frac >= 20.0)) throw UsageError("--step-frac must be at least 20");
      const LineFamily family{orientation == "v" ? LineFamily::Orientation::vertical
                                                 : LineFamily::Orientation::horizontal,
                              n_lines};
      const auto report = sample_report(domain, family, n_realizations, seed,
                                        domain.epsilon / step_frac, common.threads, panels);
      Sink sink(common.out, out);
      write_provenance(*sink, prov);
      write_counts_csv(*sink, report);
      sink.close();
    } else if (sub == ergodic) {
      AveragingReport report;
      if (mode == "condition") {
        const auto epsilons = parse_list(eps_text);
        const auto w = numbers_after(weight_text, 2, "--weight");
        const WeightSpec weight{static_cast<int>(w[0]), static_cast<int>(w[1])};
        std::pair<double, double> probe{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0)};
        if (!probe_text.empty()) {
          const auto p = numbers_after(probe_text, 2, "--probe");
          probe = {p[0], p[1]};
        }
        const Integrand g = integrand_text == "cos2cos2"   ? Integrand::cos2_cos2
                            : integrand_text == "sin2cos2" ? Integrand::sin2_cos2
                                                           : Integrand::cossin_cos2;
        try {
          weight.validate();
          validate_shape(parse_shape(domain_text));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        report = weighted_condition_check(parse_shape(domain_text), epsilons, weight, probe, g,
                                          tolerance);
      } else {
        std::vector<long long> ns;
        for (double v : parse_list(ns_text)) {
          if (!(v >= 1.0) || v != std::floor(v)) throw UsageError("--ns entries must be positive integers");
          ns.push_back(static_cast<long long>(v));
        }
        report = birkhoff_report(x, ns, mode == "weighted" ? power : 0, tolerance);
      }
      Sink sink(common.out, out);
      write_provenance(*sink, prov);
      write_averaging_csv(*sink, report);
      sink.close();
    } else if (sub == render) {
      if (common.out == "-") throw UsageError("render needs --out PATH");
      const auto domain = make_domain(domain_text, eps_text);
      const auto field = sample_field(domain, seed);
      const auto samples = evaluate_grid(field, grid);
      std::vector<std::string> comments;
      for (const auto& [k, v] : prov) comments.push_back(k + "=" + v);
      Sink image(common.out, out);
      write_pgm(*image, samples, image_mode == "sign" ? PgmMode::sign : PgmMode::gray, comments);
      image.close();
      Sink csv(csv_path.empty() ? csv_companion(common.out) : csv_path, out);
      write_provenance(*csv, prov);
      write_grid_csv(*csv, samples);
      csv.close();
    } else if (sub == table) {
      if (!(gamma > 0.0 && gamma < 1.0)) throw UsageError("--gamma must lie in (0,1)");
      if (!(table_eps > 0.0)) throw UsageError("--eps must be positive");
      struct Row {
        const char* name;
        Shape shape;
        WeightSpec weight;
      };
      const Row rows[] = {
          {"ring", QuarterRing{gamma}, WeightSpec::horizontal()},
          {"q1", q1_shape(gamma), WeightSpec::horizontal()},
          {"q2", q2_shape(gamma), WeightSpec::horizontal()},
          {"q3_hor", q3_shape(gamma), WeightSpec::horizontal()},
          {"q3_ver", q3_shape(gamma), WeightSpec::vertical()},
      };
      Sink sink(common.out, out);
      write_provenance(*sink, prov);
      *sink << "domain,correction_coeff,avg_zeros,avg_pattern_size\n";
      for (const auto& row : rows) {
        const auto pred = asymptotic_prediction(row.shape, row.weight, table_eps);
        char buf[128];
        if (full_precision) {
          std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g", row.name, pred.correction,
                        pred.zeros, pred.pattern_size);
        } else {
          std::snprintf(buf, sizeof buf, "%s,%.4g,%.3f,%.6f", row.name, pred.correction,
                        pred.zeros, pred.pattern_size);
        }
        *sink << buf << '\n';
      }
      sink.close();
    }
  } catch (const UsageError& e) {
    err << "nodal-gauge: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "nodal-gauge: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace nodalgauge::cli
