#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sigot/measures.hpp"

namespace sigot {

// Synthetic test images. Every generator returns a non-negative image of unit
// total mass.

// |N(0, 1)| per pixel, normalized.
SignedGridMeasure white_noise_image(std::size_t n, std::uint64_t seed);

// Anisotropic Gaussian on the torus centred at (cy, cx) in unit coordinates,
// with widths (sy, sx) along its principal axes rotated by `angle` radians.
SignedGridMeasure gaussian_blob(std::size_t n, double cy, double cx, double sy,
                                double sx, double angle = 0.0);

// Sum of `count` Gaussian blobs with seeded random centres, widths and
// weights: the smooth, microscopy-like test image.
SignedGridMeasure smooth_blobs(std::size_t n, std::uint64_t seed,
                               std::size_t count = 4);

// Two filled squares of side n/4 on the main diagonal.
SignedGridMeasure two_squares(std::size_t n);

// `frames` images of an asymmetric blob pair rotating once around the grid
// centre; neighbouring frames are close, opposite frames far apart.
std::vector<SignedGridMeasure> rotating_blob_sequence(std::size_t n,
                                                      std::size_t frames);

// Looks up a generator by name: "white", "blobs", "squares", "point" (centre
// pixel) or "rotation" (frame `index` of a 20-frame sequence).
SignedGridMeasure generate_image(std::string_view name, std::size_t n,
                                 std::uint64_t seed, std::size_t index = 0);

}  // namespace sigot
