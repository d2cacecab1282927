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

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nst/error.hpp"
#include "nst/evaluation.hpp"
#include "nst/image_io.hpp"
#include "nst/pipeline.hpp"
#include "nst/ssim.hpp"
#include "nst/vgg.hpp"
#include "nst/weights.hpp"

namespace nst::cli {
namespace fs = std::filesystem;
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> methods;
  std::optional<double> alpha;
  std::string size = "600x450";
  std::string weights;
  std::string content;
  std::string style;
  std::string out;
  std::string report;
  int jobs = 1;
  int reps = 20;
  int level = 1;
};

Size2 parse_size(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw UsageError("--size expects WxH, got '" + text + "'");
  const auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) ||
        s.size() > 5) {
      throw UsageError("--size expects WxH with positive integers, got '" + text + "'");
    }
    const int v = std::stoi(s);
    if (v < 1) throw UsageError("--size sides must be positive, got '" + text + "'");
    return v;
  };
  return {number(text.substr(0, x)), number(text.substr(x + 1))};
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  if (names.empty()) return {kAllMethods.begin(), kAllMethods.end()};
  for (const auto& n : names) {
    try {
      out.push_back(parse_method(n));
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

MethodConfig config_for(Method m, const Options& o) {
  MethodConfig cfg = MethodConfig::defaults(m);
  cfg.output_size = parse_size(o.size);
  if (o.alpha) cfg.alpha = *o.alpha;
  try {
    cfg.validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

fs::path weights_path(const Options& o) {
  if (!o.weights.empty()) return o.weights;
  if (const char* env = std::getenv(kWeightsEnv); env != nullptr && *env != '\0') return env;
  throw UsageError(std::string("no weight file: pass --weights or set ") + kWeightsEnv);
}

/// Loads weights and checks them against every tensor the given methods need,
/// plus the full encoder when `full_encoder` is set.
WeightStore load_for(const Options& o, std::span<const Method> methods, bool full_encoder) {
  const fs::path path = weights_path(o);
  if (!fs::is_regular_file(path)) throw WeightsError("weight file not found: " + path.string());
  WeightStore store = load_weights(path);
  const Architecture arch = Architecture::infer(store);
  for (Method m : methods) {
    const auto levels = default_levels(m);
    validate(store, method_manifest(arch, m, levels));
  }
  if (full_encoder) validate(store, encoder_manifest(arch, EncoderLevel(kMaxLevel)));
  return store;
}

void require_file(const std::string& flag, const std::string& path) {
  if (path.empty()) throw UsageError(flag + " is required");
  if (!fs::is_regular_file(path)) throw InputError(flag + ": no such file: " + path);
}

void require_png_out(const std::string& path) {
  if (path.empty()) throw UsageError("--out is required");
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext != ".png") throw UsageError("--out must name a .png file");
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw InputError("output directory does not exist: " + parent.string());
  }
}

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

/// A single image file, or every PNG/JPEG in a directory sorted by name.
std::vector<NamedImage> load_images(const std::string& flag, const std::string& path, Size2 size) {
  if (path.empty()) throw UsageError(flag + " is required");
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(path)) {
    files.emplace_back(path);
  } else {
    throw InputError(flag + ": no such file or directory: " + path);
  }
  if (files.empty()) throw InputError(flag + ": no PNG or JPEG images in " + path);
  std::vector<NamedImage> images;
  for (const auto& f : files) {
    images.push_back({f.filename().string(), resize_bilinear(load_image(f), size.width, size.height)});
  }
  return images;
}

void write_report(const std::string& path, const std::function<void(std::ostream&)>& write,
                  std::ostream& fallback) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write report: " + path);
  write(os);
  if (!os) throw InputError("failed writing report: " + path);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_stylize(const Options& o, std::ostream& out) {
  if (o.methods.size() > 1) throw UsageError("stylize takes a single --method");
  if (o.methods.empty()) throw UsageError("--method is required");
  const Method m = parse_methods(o.methods).front();
  const MethodConfig cfg = config_for(m, o);
  require_file("--content", o.content);
  require_file("--style", o.style);
  require_png_out(o.out);
  const std::array methods{m};
  const WeightStore weights = load_for(o, methods, false);

  const Image content = load_image(o.content);
  const Image style = load_image(o.style);
  const auto t0 = std::chrono::steady_clock::now();
  const Image result = stylize(content, style, cfg, weights);
  const double dt = seconds_since(t0);
  save_png(o.out, result);
  out << "wrote " << o.out << " (" << result.width() << "x" << result.height() << ", "
      << method_name(m) << ", alpha " << cfg.alpha << ", " << std::fixed << std::setprecision(3)
      << dt << " s)\n";
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto methods = parse_methods(o.methods);
  std::vector<MethodConfig> configs;
  for (Method m : methods) configs.push_back(config_for(m, o));
  const Size2 size = configs.front().output_size;
  const auto contents = load_images("--content", o.content, size);
  const auto styles = load_images("--style", o.style, size);
  const WeightStore weights = load_for(o, methods, true);

  std::vector<NamedStylizer> stylizers;
  for (const auto& cfg : configs) stylizers.push_back(make_stylizer(cfg, weights));
  EvalOptions opts;
  opts.jobs = o.jobs;
  const EvalReport report = evaluate_corpus(stylizers, contents, styles, weights, opts);
  if (o.report.empty()) {
    write_eval_csv(out, report);
  } else {
    write_report(o.report, [&](std::ostream& os) { write_eval_csv(os, report); }, out);
    write_eval_text(out, report);
  }
  return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const auto methods = parse_methods(o.methods);
  std::vector<MethodConfig> configs;
  for (Method m : methods) configs.push_back(config_for(m, o));
  const Size2 size = configs.front().output_size;
  const auto contents = load_images("--content", o.content, size);
  const auto styles = load_images("--style", o.style, size);
  const WeightStore weights = load_for(o, methods, false);

  std::vector<ImagePair> pairs;
  for (const auto& c : contents) {
    for (const auto& s : styles) pairs.push_back({c.image, s.image});
  }
  BenchReport report;
  for (const auto& cfg : configs) {
    report.entries.push_back(benchmark(make_stylizer(cfg, weights), pairs, o.reps));
  }
  if (o.report.empty()) {
    write_bench_csv(out, report);
  } else {
    write_report(o.report, [&](std::ostream& os) { write_bench_csv(os, report); }, out);
    write_bench_text(out, report);
  }
  return kExitOk;
}

int cmd_reconstruct(const Options& o, std::ostream& out) {
  const Size2 size = parse_size(o.size);
  require_file("--content", o.content);
  require_png_out(o.out);
  const EncoderLevel level(o.level);
  const fs::path path = weights_path(o);
  if (!fs::is_regular_file(path)) throw WeightsError("weight file not found: " + path.string());
  WeightStore weights = load_weights(path);
  const Architecture arch = Architecture::infer(weights);
  validate(weights, encoder_manifest(arch, level));
  validate(weights, decoder_manifest(arch, reconstruction_decoder(), level));

  const Image content = resize_bilinear(load_image(o.content), size.width, size.height);
  const Size2 work = working_size(size);
  const Image input = resize_bilinear(content, work.width, work.height);
  const Encoded enc = encode(input, level, weights);
  const Image decoded = decode(enc.features, level, weights, reconstruction_decoder());
  const Image result = resize_bilinear(decoded, size.width, size.height);
  save_png(o.out, result);
  out << "wrote " << o.out << " (level " << o.level << ", SSIM vs content " << std::fixed
      << std::setprecision(4) << ssim(result, content) << ")\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neural style transfer toolkit", "nst"};
  app.require_subcommand(1);
  Options o;

  const auto add_method = [&](CLI::App* sub, bool multiple) {
    auto* opt = sub->add_option("--method", o.methods,
                                "adain | ust-adain | ust-wct | ust-wct4 | photo-r");
    if (!multiple) opt->expected(1);
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--size", o.size, "Output size WxH")->capture_default_str();
    sub->add_option("--weights", o.weights, std::string("NSTW weight file (default $") + kWeightsEnv + ")");
  };
  const auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "Style strength in [0, 1]")->check(CLI::Range(0.0, 1.0));
  };

  auto* stylize_cmd = app.add_subcommand("stylize", "Stylize one content image");
  add_method(stylize_cmd, false);
  add_alpha(stylize_cmd);
  add_common(stylize_cmd);
  stylize_cmd->add_option("--content", o.content, "Content image");
  stylize_cmd->add_option("--style", o.style, "Style image");
  stylize_cmd->add_option("--out", o.out, "Output PNG");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "SSIM and loss averages over a corpus");
  add_method(evaluate_cmd, true);
  add_alpha(evaluate_cmd);
  add_common(evaluate_cmd);
  evaluate_cmd->add_option("--content", o.content, "Content image or directory");
  evaluate_cmd->add_option("--style", o.style, "Style image or directory");
  evaluate_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));
  evaluate_cmd->add_option("--report", o.report, "CSV output path (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "Time stylization per method");
  add_method(bench_cmd, true);
  add_alpha(bench_cmd);
  add_common(bench_cmd);
  bench_cmd->add_option("--content", o.content, "Content image or directory");
  bench_cmd->add_option("--style", o.style, "Style image or directory");
  bench_cmd->add_option("--reps", o.reps, "Timed calls per method")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  bench_cmd->add_option("--report", o.report, "CSV output path (default stdout)");

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Encode and decode without a transform");
  add_common(reconstruct_cmd);
  reconstruct_cmd->add_option("--level", o.level, "Encoder level 1..5")
      ->check(CLI::Range(1, kMaxLevel))
      ->capture_default_str();
  reconstruct_cmd->add_option("--content", o.content, "Content image");
  reconstruct_cmd->add_option("--out", o.out, "Output PNG");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nst: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (stylize_cmd->parsed()) return cmd_stylize(o, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(o, out);
    if (bench_cmd->parsed()) return cmd_bench(o, out);
    return cmd_reconstruct(o, out);
  } catch (const UsageError& e) {
    err << "nst: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "nst: " << e.what() << '\n';
    return kExitInput;
  } catch (const ImageError& e) {
    err << "nst: " << e.what() << '\n';
    return kExitInput;
  } catch (const WeightsError& e) {
    err << "nst: " << e.what() << '\n';
    return kExitWeights;
  } catch (const FormatError& e) {
    err << "nst: bad weight file: " << e.what() << '\n';
    return kExitWeights;
  } catch (const ManifestError& e) {
    err << "nst: bad weight file: " << e.what() << '\n';
    return kExitWeights;
  } catch (const UnsupportedDtypeError& e) {
    err << "nst: bad weight file: " << e.what() << '\n';
    return kExitWeights;
  } catch (const std::exception& e) {
    err << "nst: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace nst::cli
