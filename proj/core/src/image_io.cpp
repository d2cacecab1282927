// Copyright 2026 The nstkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nst/image_io.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "nst/error.hpp"

namespace nst {
namespace {

cv::Mat to_mat(const Image& img) {
  cv::Mat m(img.height(), img.width(), CV_32FC3);
  const auto src = img.data();
  std::copy(src.begin(), src.end(), m.ptr<float>());
  return m;
}

Image from_mat(const cv::Mat& m) {
  CV_Assert(m.type() == CV_32FC3 && m.isContinuous());
  const float* p = m.ptr<float>();
  return Image(m.rows, m.cols, std::vector<float>(p, p + m.total() * 3));
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw ImageError("cannot read image " + path.string() + ": no such file");
  }
  cv::Mat bgr;
  try {
    bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw ImageError("cannot decode image " + path.string() + ": " + e.what());
  }
  if (bgr.empty()) throw ImageError("cannot decode image " + path.string());
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  cv::Mat f;
  rgb.convertTo(f, CV_32FC3, 1.0 / 255.0);
  return from_mat(f);
}

void save_png(const std::filesystem::path& path, const Image& img) {
  if (img.empty()) throw ImageError("refusing to write empty image " + path.string());
  auto ext = path.extension().string();
  for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext != ".png") throw ImageError("output " + path.string() + " must have a .png extension");
  cv::Mat rgb8(img.height(), img.width(), CV_8UC3);
  const auto src = img.data();
  auto* dst = rgb8.ptr<unsigned char>();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<unsigned char>(std::lround(src[i] * 255.0f));
  }
  cv::Mat bgr8;
  cv::cvtColor(rgb8, bgr8, cv::COLOR_RGB2BGR);
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), bgr8, {cv::IMWRITE_PNG_COMPRESSION, 6});
  } catch (const cv::Exception& e) {
    throw ImageError("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw ImageError("cannot write " + path.string());
}

Image resize_bilinear(const Image& img, int width, int height) {
  if (width <= 0 || height <= 0) throw ArgumentError("resize_bilinear: non-positive target size");
  if (img.empty()) throw ArgumentError("resize_bilinear: empty image");
  if (width == img.width() && height == img.height()) return img;
  cv::Mat out;
  cv::resize(to_mat(img), out, cv::Size(width, height), 0.0, 0.0, cv::INTER_LINEAR);
  return from_mat(out);
}

}  // namespace nst
