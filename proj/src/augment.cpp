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

#include "docpair/augment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace docpair {
namespace {

std::uint8_t to_pixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Float plane with edge-replicated sampling.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-0.5 * i * i / (sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = w;
    sum += w;
  }
  for (double& w : k) w /= sum;
  return k;
}

Plane smooth(const Plane& in, double sigma) {
  if (sigma <= 0.0) return in;
  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  Plane tmp = in, out = in;
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) {
      double s = 0.0;
      for (int k = -radius; k <= radius; ++k)
        s += kernel[static_cast<std::size_t>(k + radius)] * in.at(x + k, y);
      tmp.values[static_cast<std::size_t>(y) * in.width + x] = s;
    }
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) {
      double s = 0.0;
      for (int k = -radius; k <= radius; ++k)
        s += kernel[static_cast<std::size_t>(k + radius)] * tmp.at(x, y + k);
      out.values[static_cast<std::size_t>(y) * in.width + x] = s;
    }
  return out;
}

double bilinear(const GrayImage& img, double x, double y) {
  const double fx = std::floor(x), fy = std::floor(y);
  const int x0 = static_cast<int>(fx), y0 = static_cast<int>(fy);
  const double ax = x - fx, ay = y - fy;
  const double top = img.clamped(x0, y0) * (1.0 - ax) + img.clamped(x0 + 1, y0) * ax;
  const double bottom =
      img.clamped(x0, y0 + 1) * (1.0 - ax) + img.clamped(x0 + 1, y0 + 1) * ax;
  return top * (1.0 - ay) + bottom * ay;
}

GrayImage remap(const GrayImage& img, const Plane& dx, const Plane& dy) {
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * img.width() + x;
      out.at(x, y) = to_pixel(bilinear(img, x + dx.values[i], y + dy.values[i]));
    }
  return out;
}

GrayImage grid_distortion(const GrayImage& img, const GeometricParams& p,
                          Rng& rng) {
  const int cells = p.grid_cells;
  require(cells >= 2, "grid needs at least 2 cells");
  require(cells < std::min(img.width(), img.height()),
          "grid cells smaller than one pixel");
  require(p.grid_distort >= 0.0 && p.grid_distort <= 0.25,
          "grid_distort must be in [0, 0.25]");
  const double cell_w = (img.width() - 1) / static_cast<double>(cells);
  const double cell_h = (img.height() - 1) / static_cast<double>(cells);
  const int n = cells + 1;
  std::vector<double> ox(static_cast<std::size_t>(n * n), 0.0), oy(ox);
  for (int j = 1; j < cells; ++j)
    for (int i = 1; i < cells; ++i) {
      const std::size_t k = static_cast<std::size_t>(j * n + i);
      ox[k] = uniform(rng, -1.0, 1.0) * p.grid_distort * cell_w;
      oy[k] = uniform(rng, -1.0, 1.0) * p.grid_distort * cell_h;
    }
  Plane dx{img.width(), img.height(), std::vector<double>(img.pixels().size())};
  Plane dy = dx;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const double gx = x / cell_w, gy = y / cell_h;
      const int i = std::min(static_cast<int>(gx), cells - 1);
      const int j = std::min(static_cast<int>(gy), cells - 1);
      const double ax = gx - i, ay = gy - j;
      auto lerp = [&](const std::vector<double>& o) {
        auto v = [&](int ii, int jj) { return o[static_cast<std::size_t>(jj * n + ii)]; };
        return (v(i, j) * (1 - ax) + v(i + 1, j) * ax) * (1 - ay) +
               (v(i, j + 1) * (1 - ax) + v(i + 1, j + 1) * ax) * ay;
      };
      const std::size_t k = static_cast<std::size_t>(y) * img.width() + x;
      dx.values[k] = lerp(ox);
      dy.values[k] = lerp(oy);
    }
  return remap(img, dx, dy);
}

GrayImage elastic(const GrayImage& img, const GeometricParams& p, Rng& rng) {
  require(p.elastic_alpha >= 0.0, "elastic alpha must be non-negative");
  require(p.elastic_sigma > 0.0, "elastic sigma must be positive");
  Plane dx{img.width(), img.height(), std::vector<double>(img.pixels().size())};
  Plane dy = dx;
  for (double& v : dx.values) v = uniform(rng, -1.0, 1.0);
  for (double& v : dy.values) v = uniform(rng, -1.0, 1.0);
  dx = smooth(dx, p.elastic_sigma);
  dy = smooth(dy, p.elastic_sigma);
  for (double& v : dx.values) v *= p.elastic_alpha;
  for (double& v : dy.values) v *= p.elastic_alpha;
  return remap(img, dx, dy);
}

}  // namespace

GrayImage morph_filter(const GrayImage& img, MorphMode mode, int kernel) {
  require(kernel >= 1 && kernel % 2 == 1, "kernel size must be odd and >= 1");
  const int r = kernel / 2;
  const bool erode = mode == MorphMode::kErode;
  auto pick = [erode](std::uint8_t a, std::uint8_t b) {
    return erode ? std::min(a, b) : std::max(a, b);
  };
  // Separable: rows then columns.
  GrayImage rows(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      std::uint8_t v = img.at(x, y);
      for (int k = -r; k <= r; ++k) v = pick(v, img.clamped(x + k, y));
      rows.at(x, y) = v;
    }
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      std::uint8_t v = rows.at(x, y);
      for (int k = -r; k <= r; ++k) v = pick(v, rows.clamped(x, y + k));
      out.at(x, y) = v;
    }
  return out;
}

GrayImage gaussian_noise(const GrayImage& img, double sigma, std::uint64_t seed) {
  require(sigma >= 0.0, "noise sigma must be non-negative");
  if (sigma == 0.0) return img;
  Rng rng(seed);
  GrayImage out = img;
  for (auto& p : out.pixels()) p = to_pixel(p + sigma * standard_normal(rng));
  return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  require(sigma >= 0.0, "blur sigma must be non-negative");
  if (sigma == 0.0) return img;
  Plane plane{img.width(), img.height(),
              std::vector<double>(img.pixels().begin(), img.pixels().end())};
  plane = smooth(plane, sigma);
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < plane.values.size(); ++i)
    out.pixels()[i] = to_pixel(plane.values[i]);
  return out;
}

GrayImage bitmap(const GrayImage& img, int threshold) {
  require(threshold >= 0 && threshold <= 255, "bitmap threshold must be in [0, 255]");
  GrayImage out = img;
  for (auto& p : out.pixels()) p = p >= threshold ? 255 : 0;
  return out;
}

GrayImage compress(const GrayImage& img, int quality) {
  require(quality >= 1 && quality <= 100, "quality must be in [1, 100]");
  if (quality == 100) return img;
  return jpeg_round_trip(img, quality);
}

GrayImage photometric(const GrayImage& img, PhotometricKind kind,
                      const PhotometricParams& params) {
  switch (kind) {
    case PhotometricKind::kGaussianNoise:
      return gaussian_noise(img, params.noise_sigma, params.seed);
    case PhotometricKind::kGaussianBlur:
      return gaussian_blur(img, params.blur_sigma);
    case PhotometricKind::kBitmap:
      return bitmap(img, params.bitmap_threshold);
    case PhotometricKind::kCompression:
      return compress(img, params.quality);
  }
  return img;
}

GrayImage geometric(const GrayImage& img, GeometricKind kind,
                    const GeometricParams& params, std::uint64_t seed) {
  Rng rng(seed);
  if (kind == GeometricKind::kGridDistortion) return grid_distortion(img, params, rng);
  return elastic(img, params, rng);
}

void AugmentConfig::validate() const {
  for (double p : {erosion_probability, dilation_probability, noise_probability,
                   blur_probability, bitmap_probability, compression_probability,
                   grid_probability, elastic_probability})
    require(p >= 0.0 && p <= 1.0, "probabilities must be in [0, 1]");
  require(erosion_kernel >= 1 && erosion_kernel % 2 == 1,
          "erosion_kernel must be odd and >= 1");
  require(dilation_kernel >= 1 && dilation_kernel % 2 == 1,
          "dilation_kernel must be odd and >= 1");
  require(noise_sigma >= 0.0, "noise_sigma must be non-negative");
  require(blur_sigma >= 0.0, "blur_sigma must be non-negative");
  require(bitmap_threshold >= 0 && bitmap_threshold <= 255,
          "bitmap_threshold must be in [0, 255]");
  require(compression_quality >= 1 && compression_quality <= 100,
          "compression_quality must be in [1, 100]");
  require(grid_cells >= 2, "grid_cells must be >= 2");
  require(grid_distort >= 0.0 && grid_distort <= 0.25,
          "grid_distort must be in [0, 0.25]");
  require(elastic_alpha >= 0.0, "elastic_alpha must be non-negative");
  require(elastic_sigma > 0.0, "elastic_sigma must be positive");
}

GrayImage apply_pipeline(const GrayImage& img, const AugmentConfig& config) {
  config.validate();
  Rng rng(config.seed);
  auto fires = [&](double p) { return uniform01(rng) < p; };
  const GeometricParams geo{config.grid_cells, config.grid_distort,
                            config.elastic_alpha, config.elastic_sigma};
  GrayImage out = img;
  if (fires(config.erosion_probability))
    out = morph_filter(out, MorphMode::kErode, config.erosion_kernel);
  if (fires(config.dilation_probability))
    out = morph_filter(out, MorphMode::kDilate, config.dilation_kernel);
  if (fires(config.noise_probability))
    out = gaussian_noise(out, config.noise_sigma, rng());
  if (fires(config.blur_probability)) out = gaussian_blur(out, config.blur_sigma);
  if (fires(config.bitmap_probability)) out = bitmap(out, config.bitmap_threshold);
  if (fires(config.compression_probability))
    out = compress(out, config.compression_quality);
  if (fires(config.grid_probability))
    out = geometric(out, GeometricKind::kGridDistortion, geo, rng());
  if (fires(config.elastic_probability))
    out = geometric(out, GeometricKind::kElastic, geo, rng());
  return out;
}

PerturbResult perturb_tokens(std::vector<std::uint32_t> tokens,
                             std::uint32_t vocab_size, double threshold,
                             std::uint64_t seed) {
  Rng rng(seed);
  return perturb_tokens_with(
      std::move(tokens), vocab_size, threshold, [&] { return uniform01(rng); },
      [&](std::uint64_t n) { return uniform_index(rng, n); });
}

}  // namespace docpair
