#include "sigot/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sigot/error.hpp"
#include "sigot/noise.hpp"

namespace sigot {

namespace {

// Signed wrap-around offset in [-0.5, 0.5).
double wrap(double d) { return d - std::floor(d + 0.5); }

// Streams reserved for image generation, far from the noise streams.
constexpr std::uint64_t kImageStream = 0x1000;

void require_grid(std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "grid side must be positive");
}

}  // namespace

SignedGridMeasure white_noise_image(std::size_t n, std::uint64_t seed) {
  require_grid(n);
  std::vector<double> values(n * n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = std::abs(counter_normal(seed, 0, kImageStream, k));
  }
  return normalized(SignedGridMeasure(n, std::move(values)));
}

SignedGridMeasure gaussian_blob(std::size_t n, double cy, double cx, double sy,
                                double sx, double angle) {
  require_grid(n);
  if (!(sy > 0.0) || !(sx > 0.0)) {
    throw Error(Errc::invalid_argument, "blob widths must be positive");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double side = static_cast<double>(n);
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dy = wrap((static_cast<double>(i) + 0.5) / side - cy);
      const double dx = wrap((static_cast<double>(j) + 0.5) / side - cx);
      const double u = c * dy + s * dx;
      const double v = -s * dy + c * dx;
      values[i * n + j] = std::exp(-0.5 * (u * u / (sy * sy) + v * v / (sx * sx)));
    }
  }
  return normalized(SignedGridMeasure(n, std::move(values)));
}

SignedGridMeasure smooth_blobs(std::size_t n, std::uint64_t seed,
                               std::size_t count) {
  require_grid(n);
  if (count == 0) throw Error(Errc::invalid_argument, "need at least one blob");
  SignedGridMeasure out(n);
  std::uint64_t c = 0;
  auto next = [&] { return counter_uniform(seed, 1, kImageStream, c++); };
  for (std::size_t b = 0; b < count; ++b) {
    const double cy = next();
    const double cx = next();
    const double sy = 0.04 + 0.08 * next();
    const double sx = 0.04 + 0.08 * next();
    const double angle = std::numbers::pi * next();
    const double weight = 0.5 + next();
    out = out + weight * gaussian_blob(n, cy, cx, sy, sx, angle);
  }
  return normalized(out);
}

SignedGridMeasure two_squares(std::size_t n) {
  if (n < 4) throw Error(Errc::invalid_argument, "two_squares needs n >= 4");
  const std::size_t side = n / 4;
  std::vector<double> values(n * n, 0.0);
  for (std::size_t origin : {n / 8, n / 8 + n / 2}) {
    for (std::size_t i = origin; i < origin + side; ++i) {
      for (std::size_t j = origin; j < origin + side; ++j) values[i * n + j] = 1.0;
    }
  }
  return normalized(SignedGridMeasure(n, std::move(values)));
}

std::vector<SignedGridMeasure> rotating_blob_sequence(std::size_t n,
                                                      std::size_t frames) {
  require_grid(n);
  if (frames == 0) throw Error(Errc::invalid_argument, "need at least one frame");
  std::vector<SignedGridMeasure> out;
  out.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(f) / static_cast<double>(frames);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // An elongated main body plus a small satellite break the symmetry.
    SignedGridMeasure body =
        gaussian_blob(n, 0.5 + 0.12 * s, 0.5 + 0.12 * c, 0.05, 0.16, theta);
    SignedGridMeasure satellite =
        gaussian_blob(n, 0.5 - 0.2 * s, 0.5 - 0.2 * c, 0.05, 0.05);
    out.push_back(normalized(0.75 * body + 0.25 * satellite));
  }
  return out;
}

SignedGridMeasure generate_image(std::string_view name, std::size_t n,
                                 std::uint64_t seed, std::size_t index) {
  if (name == "white") return white_noise_image(n, seed);
  if (name == "blobs") return smooth_blobs(n, seed);
  if (name == "squares") return two_squares(n);
  if (name == "point") return SignedGridMeasure::point_mass(n, n / 2, n / 2);
  if (name == "rotation") {
    auto frames = rotating_blob_sequence(n, 20);
    return frames.at(index % frames.size());
  }
  throw Error(Errc::invalid_argument,
              "unknown generator '" + std::string(name) + "'");
}

}  // namespace sigot
