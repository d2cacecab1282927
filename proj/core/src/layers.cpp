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

#include "nst/layers.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Core>

#include "nst/error.hpp"

namespace nst {
namespace {

using RowMajorF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatMap = Eigen::Map<const RowMajorF>;
using StridedOut = Eigen::Map<RowMajorF, 0, Eigen::OuterStride<>>;

// Upper bound on the im2col scratch buffer, in floats.
constexpr std::size_t kIm2colBudget = std::size_t{1} << 21;

void check_conv_shapes(const FeatureMap& input, const Tensor& kernel, const Tensor& bias) {
  if (kernel.shape.size() != 4) throw ShapeError("conv2d: kernel must be 4-D (out, in, kH, kW)");
  const auto out_c = kernel.shape[0];
  const auto in_c = kernel.shape[1];
  const auto kh = kernel.shape[2];
  const auto kw = kernel.shape[3];
  if (kh != kw || (kh != 1 && kh != 3)) {
    throw ShapeError("conv2d: only 1x1 and 3x3 kernels are supported, got " + std::to_string(kh) +
                     "x" + std::to_string(kw));
  }
  if (in_c != static_cast<std::uint32_t>(input.channels())) {
    throw ShapeError("conv2d: kernel expects " + std::to_string(in_c) + " input channels, got " +
                     std::to_string(input.channels()));
  }
  if (bias.shape.size() != 1 || bias.shape[0] != out_c) {
    throw ShapeError("conv2d: bias must have shape (" + std::to_string(out_c) + ")");
  }
  if (input.plane_size() == 0) throw ShapeError("conv2d: empty input plane");
}

// Fills rows [y0, y1) of the 3x3 im2col matrix. Row index = (c * 9 + ky * 3 + kx).
void im2col3x3(const FeatureMap& in, int y0, int y1, std::vector<float>& buf) {
  const int C = in.channels();
  const int H = in.height();
  const int W = in.width();
  const std::size_t cols = static_cast<std::size_t>(y1 - y0) * W;
  buf.resize(static_cast<std::size_t>(C) * 9 * cols);
  for (int c = 0; c < C; ++c) {
    const float* plane = in.channel(c).data();
    for (int ky = 0; ky < 3; ++ky) {
      for (int kx = 0; kx < 3; ++kx) {
        float* dst = buf.data() + (static_cast<std::size_t>(c) * 9 + ky * 3 + kx) * cols;
        const int dx = kx - 1;
        for (int y = y0; y < y1; ++y) {
          const float* src = plane + static_cast<std::size_t>(reflect_index(y + ky - 1, H)) * W;
          float* row = dst + static_cast<std::size_t>(y - y0) * W;
          const int lo = std::max(0, -dx);
          const int hi = std::min(W, W - dx);
          for (int x = 0; x < lo; ++x) row[x] = src[reflect_index(x + dx, W)];
          std::copy(src + lo + dx, src + hi + dx, row + lo);
          for (int x = std::max(hi, lo); x < W; ++x) row[x] = src[reflect_index(x + dx, W)];
        }
      }
    }
  }
}

}  // namespace

FeatureMap conv2d(const FeatureMap& input, const Tensor& kernel, const Tensor& bias) {
  check_conv_shapes(input, kernel, bias);
  const int O = static_cast<int>(kernel.shape[0]);
  const int C = input.channels();
  const int H = input.height();
  const int W = input.width();
  const int k = static_cast<int>(kernel.shape[2]);
  const auto hw = static_cast<Eigen::Index>(input.plane_size());

  FeatureMap out(O, H, W);
  const int depth = C * k * k;
  ConstMatMap weights(kernel.values.data(), O, depth);

  if (k == 1) {
    ConstMatMap src(input.data().data(), C, hw);
    StridedOut dst(out.data().data(), O, hw, Eigen::OuterStride<>(hw));
    dst.noalias() = weights * src;
  } else {
    const std::size_t per_row = static_cast<std::size_t>(depth) * W;
    const int rows_per_block =
        static_cast<int>(std::clamp<std::size_t>(kIm2colBudget / per_row, 1, H));
    std::vector<float> buf;
    for (int y0 = 0; y0 < H; y0 += rows_per_block) {
      const int y1 = std::min(H, y0 + rows_per_block);
      im2col3x3(input, y0, y1, buf);
      const auto cols = static_cast<Eigen::Index>(y1 - y0) * W;
      ConstMatMap patches(buf.data(), depth, cols);
      StridedOut dst(out.data().data() + static_cast<std::size_t>(y0) * W, O, cols,
                     Eigen::OuterStride<>(hw));
      dst.noalias() = weights * patches;
    }
  }

  for (int o = 0; o < O; ++o) {
    const float b = bias.values[static_cast<std::size_t>(o)];
    for (float& v : out.channel(o)) v += b;
  }
  return out;
}

void relu_inplace(FeatureMap& f) {
  for (float& v : f.data()) v = std::max(v, 0.0f);
}

FeatureMap relu(FeatureMap input) {
  relu_inplace(input);
  return input;
}

PoolResult maxpool2(const FeatureMap& input) {
  const int C = input.channels();
  const int H = input.height();
  const int W = input.width();
  if (H % 2 != 0 || W % 2 != 0) {
    throw ShapeError("maxpool2: spatial size " + std::to_string(H) + "x" + std::to_string(W) +
                     " is not even");
  }
  const int oh = H / 2;
  const int ow = W / 2;
  PoolResult r{FeatureMap(C, oh, ow), PoolArgmax{C, H, W, {}}};
  r.argmax.offsets.resize(r.output.size());
  std::size_t i = 0;
  for (int c = 0; c < C; ++c) {
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x, ++i) {
        float best = input.at(c, 2 * y, 2 * x);
        std::uint8_t arg = 0;
        for (std::uint8_t k = 1; k < 4; ++k) {
          const float v = input.at(c, 2 * y + k / 2, 2 * x + k % 2);
          if (v > best) {
            best = v;
            arg = k;
          }
        }
        r.output.data()[i] = best;
        r.argmax.offsets[i] = arg;
      }
    }
  }
  return r;
}

FeatureMap upsample_nearest2(const FeatureMap& input) {
  const int C = input.channels();
  const int H = input.height();
  const int W = input.width();
  FeatureMap out(C, 2 * H, 2 * W);
  for (int c = 0; c < C; ++c) {
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        const float v = input.at(c, y, x);
        out.at(c, 2 * y, 2 * x) = v;
        out.at(c, 2 * y, 2 * x + 1) = v;
        out.at(c, 2 * y + 1, 2 * x) = v;
        out.at(c, 2 * y + 1, 2 * x + 1) = v;
      }
    }
  }
  return out;
}

FeatureMap unpool(const FeatureMap& input, const PoolArgmax& argmax) {
  if (input.channels() != argmax.channels || input.height() * 2 != argmax.in_height ||
      input.width() * 2 != argmax.in_width || argmax.offsets.size() != input.size()) {
    throw ShapeError("unpool: input " + std::to_string(input.channels()) + "x" +
                     std::to_string(input.height()) + "x" + std::to_string(input.width()) +
                     " does not match recorded pool of " + std::to_string(argmax.channels) + "x" +
                     std::to_string(argmax.in_height) + "x" + std::to_string(argmax.in_width));
  }
  FeatureMap out(input.channels(), argmax.in_height, argmax.in_width);
  std::size_t i = 0;
  for (int c = 0; c < input.channels(); ++c) {
    for (int y = 0; y < input.height(); ++y) {
      for (int x = 0; x < input.width(); ++x, ++i) {
        const std::uint8_t k = argmax.offsets[i];
        if (k > 3) throw ShapeError("unpool: argmax offset outside its 2x2 window");
        out.at(c, 2 * y + k / 2, 2 * x + k % 2) = input.data()[i];
      }
    }
  }
  return out;
}

}  // namespace nst
