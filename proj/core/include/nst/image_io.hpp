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

#pragma once

#include <filesystem>

#include "nst/tensor.hpp"

namespace nst {

/// Reads a PNG or JPEG file as RGB in [0, 1]. Throws ImageError.
Image load_image(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG. Throws ImageError.
void save_png(const std::filesystem::path& path, const Image& img);

/// Bilinear resampling to width x height.
Image resize_bilinear(const Image& img, int width, int height);

}  // namespace nst
