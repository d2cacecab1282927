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

// Writes synthetic weights and a procedural desk corpus for trying the
// toolkit without converted checkpoints.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nst/image_io.hpp"
#include "nst/synthetic.hpp"
#include "nst/weights.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic weights and a desk corpus", "nst-synth"};
  std::string weights_out;
  std::string corpus_dir;
  std::uint64_t seed = nst::SyntheticWeightsOptions{}.seed;
  std::vector<int> widths(nst::compact_architecture().widths.begin(),
                          nst::compact_architecture().widths.end());
  int contents = 5;
  int styles = 5;
  int width = 600;
  int height = 450;
  app.add_option("--weights-out", weights_out, "NSTW file to write");
  app.add_option("--corpus", corpus_dir, "Directory for content/ and style/ images");
  app.add_option("--seed", seed, "Weight seed")->capture_default_str();
  app.add_option("--widths", widths, "Five block widths")->expected(5)->check(CLI::Range(9, 4096));
  app.add_option("--contents", contents, "Content images")->check(CLI::Range(1, 1000));
  app.add_option("--styles", styles, "Style images")->check(CLI::Range(1, 1000));
  app.add_option("--width", width, "Image width")->check(CLI::Range(16, 8192));
  app.add_option("--height", height, "Image height")->check(CLI::Range(16, 8192));
  CLI11_PARSE(app, argc, argv);
  if (weights_out.empty() && corpus_dir.empty()) {
    std::cerr << "nothing to do: pass --weights-out and/or --corpus\n" << app.help();
    return 64;
  }

  try {
    if (!weights_out.empty()) {
      nst::SyntheticWeightsOptions opts;
      opts.seed = seed;
      std::copy(widths.begin(), widths.end(), opts.arch.widths.begin());
      const auto store = nst::make_synthetic_weights(opts);
      nst::save_weights(weights_out, store);
      std::cout << "wrote " << weights_out << " (" << store.size() << " tensors)\n";
    }
    if (!corpus_dir.empty()) {
      const fs::path root(corpus_dir);
      fs::create_directories(root / "content");
      fs::create_directories(root / "style");
      char name[32];
      for (int i = 0; i < contents; ++i) {
        std::snprintf(name, sizeof name, "content_%02d.png", i);
        nst::save_png(root / "content" / name,
                      nst::make_content_image(width, height, static_cast<std::uint64_t>(i)));
      }
      for (int i = 0; i < styles; ++i) {
        std::snprintf(name, sizeof name, "style_%02d.png", i);
        nst::save_png(root / "style" / name,
                      nst::make_style_image(width, height, static_cast<std::uint64_t>(100 + i)));
      }
      std::cout << "wrote " << contents << " content and " << styles << " style images to "
                << corpus_dir << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "nst-synth: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
