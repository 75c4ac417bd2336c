#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigot/experiments.hpp"
#include "sigot/measures.hpp"

namespace sigot {

enum class ImageFormat { automatic, csv, pgm };

// CSV: n lines of n comma-separated reals. PGM: P2 or P5, maxval <= 65535,
// values divided by maxval. `automatic` picks PGM for a "P2"/"P5" header and
// CSV otherwise. With `normalize`, rescales to unit mass (error if total <= 0).
SignedGridMeasure load_image(const std::string& path,
                             ImageFormat format = ImageFormat::automatic,
                             bool normalize = false);
SignedGridMeasure parse_csv_image(const std::string& text);
SignedGridMeasure parse_pgm_image(const std::string& bytes);

// Writes the image as CSV with 17 significant digits (exact round trip).
void save_image(const SignedGridMeasure& mu, const std::string& path);
std::string format_csv_image(const SignedGridMeasure& mu);

// "%.17g" rendering used for every real in output files.
std::string format_real(double v);

// Header `sigma,trial,metric,pair,value,bound`, rows sorted by
// (sigma, trial, metric, pair). Throws Errc::invalid_argument on duplicate
// keys and Errc::io_error when the path cannot be written.
std::string format_records(std::vector<ExperimentRecord> records);
void write_records(const std::vector<ExperimentRecord>& records,
                   const std::string& path);

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::size_t n = 32;
  std::vector<int> ps{1, 2, 3};
  double sigma = 0.01;
  double sigma_min = 1e-4;
  double sigma_max = 1e-1;
  std::size_t sigma_count = 8;
  bool log_spaced = true;
  bool include_zero = false;
  std::vector<double> sigmas;  // explicit grid; overrides min/max/count
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::uint64_t image_seed = 1;
  unsigned workers = 1;
  std::string output;  // empty or "-" = stdout
  bool normalize = true;
  std::string generator;
  std::size_t frames = 20;
  int k_star = 0;  // 0 = log2 n
  double w1_clean = 0.0;
  std::size_t trial = 0;
  std::size_t pixel_i = 0;
  std::size_t pixel_j = 0;
  std::string direction = "source";
};

// Full sigma sweep described by the config.
std::vector<double> sigma_grid(const RunConfig& cfg);

// Validates and executes one subcommand. Text goes to `out`; throws
// sigot::Error on failure.
void dispatch(const RunConfig& cfg, std::ostream& out);

// Parses argv, dispatches and maps failures to a single diagnostic line on
// `err`. Returns 0 on success, 1 on runtime errors, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigot
