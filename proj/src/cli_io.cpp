#include "sigot/cli_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "sigot/bounds.hpp"
#include "sigot/dyadic.hpp"
#include "sigot/error.hpp"
#include "sigot/noise.hpp"
#include "sigot/solver.hpp"
#include "sigot/synthetic.hpp"

namespace sigot {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw Error(Errc::io_error, "write to '" + path + "' failed");
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ": bad number '" +
                                       std::string(token) + "'");
  }
  return v;
}

}  // namespace

SignedGridMeasure parse_csv_image(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      row.push_back(parse_real(body.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) +
                                         ": ragged row of " + std::to_string(row.size()) +
                                         " values");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(Errc::parse_error, "empty image");
  const std::size_t n = rows.size();
  if (rows.front().size() != n) {
    throw Error(Errc::invalid_argument,
                "non-square image (" + std::to_string(n) + "x" +
                    std::to_string(rows.front().size()) + ")");
  }
  std::vector<double> values;
  values.reserve(n * n);
  for (const auto& row : rows) values.insert(values.end(), row.begin(), row.end());
  return SignedGridMeasure(n, std::move(values));
}

SignedGridMeasure parse_pgm_image(const std::string& bytes) {
  std::size_t pos = 0;
  // Header tokens are separated by whitespace; '#' starts a comment line.
  auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#') {
      ++pos;
    }
    if (start == pos) throw Error(Errc::parse_error, "truncated PGM header");
    return bytes.substr(start, pos - start);
  };
  auto next_uint = [&](const char* what) {
    const std::string tok = next_token();
    unsigned long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(Errc::parse_error, std::string("bad PGM ") + what + " '" + tok + "'");
    }
    return v;
  };

  const std::string magic = next_token();
  if (magic != "P2" && magic != "P5") {
    throw Error(Errc::parse_error, "unsupported PGM type '" + magic + "'");
  }
  const unsigned long width = next_uint("width");
  const unsigned long height = next_uint("height");
  const unsigned long maxval = next_uint("maxval");
  if (maxval == 0 || maxval > 65535) {
    throw Error(Errc::parse_error, "PGM maxval must be in [1, 65535]");
  }
  if (width != height) {
    throw Error(Errc::invalid_argument, "non-square image (" + std::to_string(height) +
                                            "x" + std::to_string(width) + ")");
  }
  if (width == 0) throw Error(Errc::parse_error, "empty PGM image");
  const std::size_t count = width * height;
  std::vector<double> values(count);
  const double scale = static_cast<double>(maxval);
  if (magic == "P2") {
    for (std::size_t k = 0; k < count; ++k) {
      const unsigned long v = next_uint("sample");
      if (v > maxval) throw Error(Errc::parse_error, "PGM sample exceeds maxval");
      values[k] = static_cast<double>(v) / scale;
    }
  } else {
    ++pos;  // single whitespace byte after maxval
    const std::size_t width_bytes = maxval < 256 ? 1 : 2;
    if (bytes.size() < pos + count * width_bytes) {
      throw Error(Errc::parse_error, "truncated PGM raster");
    }
    for (std::size_t k = 0; k < count; ++k) {
      unsigned long v = static_cast<unsigned char>(bytes[pos++]);
      if (width_bytes == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos++]);
      if (v > maxval) throw Error(Errc::parse_error, "PGM sample exceeds maxval");
      values[k] = static_cast<double>(v) / scale;
    }
  }
  return SignedGridMeasure(width, std::move(values));
}

SignedGridMeasure load_image(const std::string& path, ImageFormat format,
                             bool normalize) {
  const std::string bytes = read_file(path);
  if (format == ImageFormat::automatic) {
    const bool pgm = bytes.size() >= 2 && bytes[0] == 'P' &&
                     (bytes[1] == '2' || bytes[1] == '5');
    format = pgm ? ImageFormat::pgm : ImageFormat::csv;
  }
  try {
    SignedGridMeasure mu =
        format == ImageFormat::pgm ? parse_pgm_image(bytes) : parse_csv_image(bytes);
    if (!normalize) return mu;
    if (!(mu.total_mass() > 0.0)) {
      throw Error(Errc::degenerate, "total mass must be positive to normalize");
    }
    return normalized(mu);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string format_real(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_csv_image(const SignedGridMeasure& mu) {
  std::string out;
  for (std::size_t i = 0; i < mu.n(); ++i) {
    for (std::size_t j = 0; j < mu.n(); ++j) {
      if (j > 0) out += ',';
      out += format_real(mu(i, j));
    }
    out += '\n';
  }
  return out;
}

void save_image(const SignedGridMeasure& mu, const std::string& path) {
  write_file(path, format_csv_image(mu));
}

std::string format_records(std::vector<ExperimentRecord> records) {
  auto key = [](const ExperimentRecord& r) {
    return std::tie(r.sigma, r.trial, r.metric, r.pair);
  };
  std::sort(records.begin(), records.end(),
            [&](const ExperimentRecord& a, const ExperimentRecord& b) {
              return key(a) < key(b);
            });
  std::string out = "sigma,trial,metric,pair,value,bound\n";
  for (std::size_t k = 0; k < records.size(); ++k) {
    const ExperimentRecord& r = records[k];
    if (k > 0 && key(records[k - 1]) == key(r)) {
      throw Error(Errc::invalid_argument, "duplicate record key (" + r.metric + ", " +
                                              r.pair + ")");
    }
    out += format_real(r.sigma);
    out += ',';
    out += std::to_string(r.trial);
    out += ',';
    out += r.metric;
    out += ',';
    out += r.pair;
    out += ',';
    out += format_real(r.value);
    out += ',';
    if (r.bound) out += format_real(*r.bound);
    out += '\n';
  }
  return out;
}

void write_records(const std::vector<ExperimentRecord>& records,
                   const std::string& path) {
  write_file(path, format_records(records));
}

std::vector<double> sigma_grid(const RunConfig& cfg) {
  std::vector<double> grid = cfg.sigmas;
  if (grid.empty()) {
    if (cfg.sigma_count == 0) throw Error(Errc::invalid_argument, "sigma count must be >= 1");
    if (cfg.log_spaced) {
      grid = log_space(cfg.sigma_min, cfg.sigma_max, cfg.sigma_count);
    } else {
      if (!(cfg.sigma_min > 0.0) || !(cfg.sigma_max >= cfg.sigma_min)) {
        throw Error(Errc::invalid_argument, "sigma range needs 0 < min <= max");
      }
      for (std::size_t i = 0; i < cfg.sigma_count; ++i) {
        const double f = cfg.sigma_count == 1 ? 0.0
                                              : static_cast<double>(i) /
                                                    static_cast<double>(cfg.sigma_count - 1);
        grid.push_back(cfg.sigma_min + f * (cfg.sigma_max - cfg.sigma_min));
      }
    }
  }
  if (cfg.include_zero && (grid.empty() || grid.front() != 0.0)) {
    grid.insert(grid.begin(), 0.0);
  }
  return grid;
}

namespace {

std::vector<SignedGridMeasure> input_images(const RunConfig& cfg, std::size_t want) {
  std::vector<SignedGridMeasure> out;
  if (!cfg.inputs.empty()) {
    if (want != 0 && cfg.inputs.size() != want) {
      throw Error(Errc::invalid_argument, "expected " + std::to_string(want) +
                                              " input image(s), got " +
                                              std::to_string(cfg.inputs.size()));
    }
    for (const auto& path : cfg.inputs) {
      out.push_back(load_image(path, ImageFormat::automatic, cfg.normalize));
    }
    for (const auto& img : out) require_same_grid(out.front(), img);
    return out;
  }
  if (cfg.generator.empty()) {
    throw Error(Errc::invalid_argument, "no input images (give paths or --generator)");
  }
  const std::size_t count = want != 0 ? want : cfg.frames;
  if (cfg.generator == "rotation") {
    auto seq = rotating_blob_sequence(cfg.n, cfg.frames);
    if (want == 0) return seq;
    for (std::size_t k = 0; k < want; ++k) out.push_back(seq.at(k % seq.size()));
    return out;
  }
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(generate_image(cfg.generator, cfg.n, cfg.image_seed + k, k));
  }
  return out;
}

std::vector<Metric> wp_metrics(const std::vector<int>& ps) {
  std::vector<Metric> out;
  for (int p : ps) {
    if (p < 1 || p > 3) throw Error(Errc::invalid_argument, "p must be 1, 2 or 3");
    const Metric m = p == 1 ? Metric::W1 : p == 2 ? Metric::W2 : Metric::W3;
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

ExperimentConfig experiment_config(const RunConfig& cfg, std::size_t n,
                                   std::vector<Metric> metrics) {
  ExperimentConfig ec;
  ec.n = n;
  ec.sigmas = sigma_grid(cfg);
  ec.trials = cfg.trials;
  ec.metrics = std::move(metrics);
  ec.seed = cfg.seed;
  ec.workers = cfg.workers;
  validate(ec);
  return ec;
}

bool to_stdout(const RunConfig& cfg) { return cfg.output.empty() || cfg.output == "-"; }

// CSV to the output file (summary lines then go to `out`), or CSV alone to
// `out` when no file was given.
template <typename Summary>
void emit(const RunConfig& cfg, std::ostream& out,
          const std::vector<ExperimentRecord>& records, Summary summary) {
  if (to_stdout(cfg)) {
    out << format_records(records);
    return;
  }
  write_records(records, cfg.output);
  summary();
}

void emit_image(const RunConfig& cfg, std::ostream& out, const SignedGridMeasure& mu) {
  if (to_stdout(cfg)) {
    out << format_csv_image(mu);
  } else {
    save_image(mu, cfg.output);
  }
}

void print_bounds(std::ostream& out, std::size_t n, double sigma,
                  const std::vector<int>& ps, double w1_clean) {
  std::set<std::pair<std::string, int>> seen;
  for (int p : ps) {
    for (const BoundReport& b : evaluate_bounds(n, sigma, p, w1_clean)) {
      if (!seen.emplace(b.name, b.p).second) continue;
      out << b.name << " n=" << b.n << " sigma=" << format_real(b.sigma)
          << " p=" << b.p << ' ' << format_real(b.value) << '\n';
    }
  }
}

void run_dist(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 2);
  out << "L2 " << format_real(l2_distance(imgs[0], imgs[1])) << '\n';
  double w1 = 0.0;
  for (Metric m : {Metric::W1, Metric::W2, Metric::W3}) {
    const double v = evaluate_metric(m, imgs[0], imgs[1]);
    if (m == Metric::W1) w1 = v;
    out << metric_name(m) << ' ' << format_real(v) << '\n';
  }
  if (is_power_of_two(imgs[0].n()) && imgs[0].n() >= 2) {
    print_bounds(out, imgs[0].n(), cfg.sigma, cfg.ps, w1);
  }
}

void run_noise(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 1);
  const NoiseModel model{imgs[0].n(), cfg.sigma, cfg.seed, false};
  emit_image(cfg, out, add_noise(imgs[0], sample_zero_sum(model, cfg.trial, 0)));
}

void run_dyadic(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 2);
  const std::size_t n = imgs[0].n();
  const DyadicPartition part =
      cfg.k_star == 0 ? build_partition(n) : build_partition(n, cfg.k_star);
  for (int p : cfg.ps) {
    const double bound = multiscale_bound(imgs[0], imgs[1], p, part);
    const double exact = std::pow(evaluate_metric(wp_metrics({p}).front(), imgs[0], imgs[1]), p);
    out << "multiscale_bound p=" << p << " k*=" << part.k_star << ' ' << format_real(bound)
        << '\n';
    out << "exact_cost_p p=" << p << ' ' << format_real(exact) << '\n';
  }
}

void print_series(std::ostream& out, const std::vector<Series>& series) {
  for (const Series& s : series) {
    for (const SeriesPoint& pt : s.points) {
      out << s.label << " sigma=" << format_real(pt.sigma) << " mean=" << format_real(pt.mean)
          << " se=" << format_real(pt.se);
      if (pt.bound) out << " bound=" << format_real(*pt.bound);
      out << '\n';
    }
  }
}

void run_scaling(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 1);
  std::vector<Metric> metrics{Metric::L2};
  for (Metric m : wp_metrics(cfg.ps)) metrics.push_back(m);
  const auto result = exp_scaling(imgs[0], experiment_config(cfg, imgs[0].n(), metrics));
  emit(cfg, out, result.records, [&] {
    print_series(out, result.series);
    for (const auto& [m, slope] : result.slopes) {
      out << "slope " << metric_name(m) << ' ' << format_real(slope) << '\n';
    }
  });
}

void run_ratio(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 2);
  std::vector<Metric> metrics{Metric::L2};
  for (Metric m : wp_metrics(cfg.ps)) metrics.push_back(m);
  const auto result = exp_ratio(imgs[0], imgs[1], experiment_config(cfg, imgs[0].n(), metrics));
  emit(cfg, out, result.records, [&] {
    print_series(out, result.series);
    for (Metric m : result.excluded) out << "excluded " << metric_name(m) << '\n';
  });
}

void run_overlay(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 2);
  const auto result = exp_bound_overlay(
      imgs[0], imgs[1], experiment_config(cfg, imgs[0].n(), wp_metrics(cfg.ps)));
  emit(cfg, out, result.records, [&] {
    print_series(out, result.series);
    out << "w1_clean " << format_real(result.w1_clean) << '\n';
    out << "within_bounds " << (result.all_within_bounds ? "yes" : "no") << '\n';
  });
}

void run_matrix(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 0);
  std::vector<Metric> metrics{Metric::L2};
  for (Metric m : wp_metrics(cfg.ps)) metrics.push_back(m);
  const auto result = exp_matrix(imgs, experiment_config(cfg, imgs[0].n(), metrics));
  emit(cfg, out, result.records, [&] {
    for (const MatrixEntry& e : result.entries) {
      out << "spearman " << metric_name(e.metric) << " sigma=" << format_real(e.sigma) << ' '
          << format_real(e.rank_correlation) << " symmetric=" << e.clean.symmetric
          << " zero_diagonal=" << e.clean.zero_diagonal << '\n';
    }
  });
}

void run_dip(const RunConfig& cfg, std::ostream& out) {
  const auto result = exp_dip(experiment_config(cfg, cfg.n, wp_metrics(cfg.ps)));
  emit(cfg, out, result.records, [&] {
    print_series(out, result.series);
    for (const DipSummary& s : result.summaries) {
      out << "dip " << metric_name(s.metric) << " clean=" << format_real(s.clean_value)
          << " detected=" << (s.dip_detected ? "yes" : "no");
      if (s.dip_detected) {
        out << " sigma=" << format_real(s.dip_sigma) << " depth_se=" << format_real(s.dip_depth_se);
      }
      out << '\n';
    }
  });
}

void run_trace(const RunConfig& cfg, std::ostream& out) {
  const auto imgs = input_images(cfg, 2);
  SignedGridMeasure a = imgs[0];
  SignedGridMeasure b = imgs[1];
  if (cfg.sigma > 0.0) {
    const NoiseModel model{a.n(), cfg.sigma, cfg.seed, false};
    a = add_noise(a, sample_zero_sum(model, cfg.trial, 0));
    b = add_noise(b, sample_zero_sum(model, cfg.trial, 1));
  }
  const int p = cfg.ps.front();
  const SignedDistanceResult result = signed_wasserstein(a, b, p);
  const TraceDirection dir =
      cfg.direction == "target" ? TraceDirection::target : TraceDirection::source;
  const SignedGridMeasure trace = flow_trace(result, cfg.pixel_i, cfg.pixel_j, dir);
  emit_image(cfg, out, trace);
  if (!to_stdout(cfg)) {
    out << "W" << p << " " << format_real(result.value) << '\n';
    out << "trace_mass " << format_real(trace.total_mass()) << '\n';
  }
}

}  // namespace

void dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.ps.empty()) throw Error(Errc::invalid_argument, "need at least one p");
  if (cfg.workers == 0) throw Error(Errc::invalid_argument, "workers must be >= 1");
  if (cfg.trials == 0) throw Error(Errc::invalid_argument, "trials must be >= 1");
  if (!(cfg.sigma >= 0.0)) throw Error(Errc::invalid_argument, "sigma must be >= 0");
  const std::string& sub = cfg.subcommand;
  if (sub == "dist") return run_dist(cfg, out);
  if (sub == "noise") return run_noise(cfg, out);
  if (sub == "bound") return print_bounds(out, cfg.n, cfg.sigma, cfg.ps, cfg.w1_clean);
  if (sub == "dyadic") return run_dyadic(cfg, out);
  if (sub == "scaling") return run_scaling(cfg, out);
  if (sub == "ratio") return run_ratio(cfg, out);
  if (sub == "overlay") return run_overlay(cfg, out);
  if (sub == "matrix") return run_matrix(cfg, out);
  if (sub == "dip") return run_dip(cfg, out);
  if (sub == "trace") return run_trace(cfg, out);
  throw Error(Errc::invalid_argument, "unknown subcommand '" + sub + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact optimal transport between signed images on the torus"};
  app.require_subcommand(1);
  std::vector<int> pixel;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"dist", "L2 and signed W1/W2/W3 between two images, plus bounds"},
      {"noise", "write a zero-sum noisy copy of an image"},
      {"bound", "print the closed-form noise bounds"},
      {"dyadic", "multiscale dyadic bound for a pair of images"},
      {"scaling", "self-distance scaling sweep"},
      {"ratio", "noisy/clean distance ratios for a pair"},
      {"overlay", "noisy pair distances next to the two-image bounds"},
      {"matrix", "clean and noise-averaged pairwise distance matrices"},
      {"dip", "two point masses under increasing noise"},
      {"trace", "where the mass of one pixel goes under the optimal plan"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", cfg.inputs, "image files (CSV or PGM)");
    sub->add_option("--n", cfg.n, "grid side for generated images and bounds")
        ->check(CLI::PositiveNumber);
    sub->add_option("--p", cfg.ps, "transport exponents")->delimiter(',');
    sub->add_option("--sigma", cfg.sigma, "noise level")->check(CLI::NonNegativeNumber);
    sub->add_option("--sigma-min", cfg.sigma_min, "smallest sweep sigma")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sigma-max", cfg.sigma_max, "largest sweep sigma")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sigma-count", cfg.sigma_count, "sweep points")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sigmas", cfg.sigmas, "explicit sweep")->delimiter(',');
    sub->add_flag("--linear{false}", cfg.log_spaced, "linear instead of log spacing");
    sub->add_flag("--with-zero", cfg.include_zero, "prepend the noiseless level");
    sub->add_option("--trials", cfg.trials, "trials per sigma")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "noise seed");
    sub->add_option("--image-seed", cfg.image_seed, "seed for generated images");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("-o,--out", cfg.output, "output file (default stdout)");
    sub->add_flag("--raw{false}", cfg.normalize, "do not normalize input images");
    sub->add_option("--generator", cfg.generator,
                    "synthetic images: white, blobs, squares, point, rotation");
    sub->add_option("--frames", cfg.frames, "images for matrix runs")
        ->check(CLI::PositiveNumber);
    sub->add_option("--kstar", cfg.k_star, "dyadic depth (default log2 n)");
    sub->add_option("--w1-clean", cfg.w1_clean, "clean W1 for the pair bound")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--trial", cfg.trial, "noise trial index");
    sub->add_option("--pixel", pixel, "pixel row,col")->delimiter(',')->expected(2);
    sub->add_option("--direction", cfg.direction, "source or target")
        ->check(CLI::IsMember({"source", "target"}));
    sub->callback([&cfg, name = name] { cfg.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "sigot: error: " << e.what() << '\n';
    return 2;
  }
  if (!pixel.empty()) {
    if (pixel[0] < 0 || pixel[1] < 0) {
      err << "sigot: error: pixel coordinates must be >= 0\n";
      return 2;
    }
    cfg.pixel_i = static_cast<std::size_t>(pixel[0]);
    cfg.pixel_j = static_cast<std::size_t>(pixel[1]);
  }
  try {
    dispatch(cfg, out);
  } catch (const std::exception& e) {
    err << "sigot: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sigot
