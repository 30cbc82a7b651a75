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

#include "docpair/image.hpp"

#include <algorithm>
#include <stdexcept>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace docpair {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("image dimensions must be positive");
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

std::uint8_t GrayImage::clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return at(x, y);
}

namespace {

GrayImage from_mat(const cv::Mat& mat) {
  GrayImage image(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    const auto* row = mat.ptr<std::uint8_t>(y);
    std::copy(row, row + mat.cols, &image.at(0, y));
  }
  return image;
}

cv::Mat to_mat(const GrayImage& image) {
  cv::Mat mat(image.height(), image.width(), CV_8UC1);
  for (int y = 0; y < image.height(); ++y)
    std::copy_n(image.pixels().data() + static_cast<std::size_t>(y) * image.width(),
                image.width(), mat.ptr<std::uint8_t>(y));
  return mat;
}

}  // namespace

GrayImage read_png(const std::string& path) {
  const cv::Mat mat = cv::imread(path, cv::IMREAD_GRAYSCALE);
  if (mat.empty()) throw std::runtime_error("cannot read image " + path);
  return from_mat(mat);
}

void write_png(const std::string& path, const GrayImage& image) {
  if (!cv::imwrite(path, to_mat(image)))
    throw std::runtime_error("cannot write image " + path);
}

GrayImage jpeg_round_trip(const GrayImage& image, int quality) {
  if (quality < 1 || quality > 99)
    throw std::invalid_argument("jpeg quality must be in [1, 99]");
  std::vector<std::uint8_t> buffer;
  cv::imencode(".jpg", to_mat(image), buffer,
               {cv::IMWRITE_JPEG_QUALITY, quality});
  return from_mat(cv::imdecode(buffer, cv::IMREAD_GRAYSCALE));
}

}  // namespace docpair
