// Copyright (c) 2026 The docpair Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "docpair/image.hpp"
#include "docpair/random.hpp"

namespace docpair {

enum class MorphMode { kErode, kDilate };

/// Square-window minimum (erode) or maximum (dilate) with edge
/// replication. `kernel` must be odd and >= 1.
GrayImage morph_filter(const GrayImage& img, MorphMode mode, int kernel);

enum class PhotometricKind { kGaussianNoise, kGaussianBlur, kBitmap, kCompression };

struct PhotometricParams {
  double noise_sigma = 8.0;
  double blur_sigma = 1.0;
  int bitmap_threshold = 128;  // pixels >= threshold become 255
  int quality = 75;            // 100 is lossless
  std::uint64_t seed = 0;      // noise only
};

GrayImage gaussian_noise(const GrayImage& img, double sigma, std::uint64_t seed);
GrayImage gaussian_blur(const GrayImage& img, double sigma);
GrayImage bitmap(const GrayImage& img, int threshold);
GrayImage compress(const GrayImage& img, int quality);

GrayImage photometric(const GrayImage& img, PhotometricKind kind,
                      const PhotometricParams& params);

enum class GeometricKind { kGridDistortion, kElastic };

struct GeometricParams {
  int grid_cells = 5;
  double grid_distort = 0.25;  // max control point offset, fraction of a cell
  double elastic_alpha = 34.0;
  double elastic_sigma = 4.0;
};

GrayImage geometric(const GrayImage& img, GeometricKind kind,
                    const GeometricParams& params, std::uint64_t seed);

/// Per-transform probabilities and parameters. Transforms run in the order
/// erosion, dilation, noise, blur, bitmap, compression, grid, elastic.
struct AugmentConfig {
  double erosion_probability = 0.1;
  double dilation_probability = 0.1;
  double noise_probability = 0.1;
  double blur_probability = 0.1;
  double bitmap_probability = 0.1;
  double compression_probability = 0.1;
  double grid_probability = 0.1;
  double elastic_probability = 0.1;

  int erosion_kernel = 3;
  int dilation_kernel = 3;
  double noise_sigma = 8.0;
  double blur_sigma = 1.0;
  int bitmap_threshold = 128;
  int compression_quality = 75;
  int grid_cells = 5;
  double grid_distort = 0.25;
  double elastic_alpha = 34.0;
  double elastic_sigma = 4.0;

  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for out-of-range values.
  void validate() const;
};

GrayImage apply_pipeline(const GrayImage& img, const AugmentConfig& config);

struct PerturbResult {
  std::vector<std::uint32_t> tokens;
  std::size_t replacements = 0;
};

/// Anti-repetition perturbation: while a fresh uniform draw is below
/// `threshold`, one uniformly chosen position receives a uniformly chosen
/// token id. `uniform` yields values in [0, 1); `index(n)` values in
/// [0, n).
template <typename Uniform, typename Index>
PerturbResult perturb_tokens_with(std::vector<std::uint32_t> tokens,
                                  std::uint32_t vocab_size, double threshold,
                                  Uniform&& uniform, Index&& index) {
  if (tokens.empty()) throw std::invalid_argument("empty token sequence");
  if (vocab_size == 0) throw std::invalid_argument("empty vocabulary");
  PerturbResult result{std::move(tokens), 0};
  while (uniform() < threshold) {
    const auto pos = index(result.tokens.size());
    result.tokens[pos] = static_cast<std::uint32_t>(index(vocab_size));
    ++result.replacements;
  }
  return result;
}

PerturbResult perturb_tokens(std::vector<std::uint32_t> tokens,
                             std::uint32_t vocab_size, double threshold,
                             std::uint64_t seed);

}  // namespace docpair
