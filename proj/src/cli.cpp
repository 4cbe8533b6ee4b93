// Copyright (c) 2026 The perfseg Authors
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

#include "perfseg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <regex>

#include <CLI11.hpp>
#include <json.hpp>

#include "perfseg/io.hpp"
#include "perfseg/metrics.hpp"
#include "perfseg/phantom.hpp"
#include "perfseg/pipeline.hpp"
#include "perfseg/projection.hpp"

namespace perfseg::cli
{

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace
{

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SegmentOptions
{
  std::string manifest;
  std::string out_dir;
  std::size_t ref_timepoint{3};
  bool emit_intermediate{false};
  std::size_t jobs{0};
};

struct EvalOptions
{
  std::string pred_dir;
  std::string ref_dir;
  std::string format{"json"};
  std::string out;
  std::string prefix{"roi_slice"};
};

struct PhantomOptions
{
  std::string out_dir;
  std::uint64_t seed{42};
  std::string preset{"default"};
  std::string size{"256x256"};
  std::size_t timepoints{40};
  std::size_t slices{3};
};

struct ProfileOptions
{
  std::string image;
  std::string axis{"both"};
  std::string out;
};

std::string mask_name(const char * kind, std::size_t slice)
{
  return std::string(kind) + "_slice" + std::to_string(slice) + ".pgm";
}

ordered_json box_json(const CropBox & b)
{
  return ordered_json{{"x0", b.x0}, {"x1", b.x1}, {"y0", b.y0}, {"y1", b.y1}};
}

int cmd_segment(const SegmentOptions & o)
{
  const auto study = load_study(o.manifest);
  if (!study.empty()) {
    const std::size_t t = study.slices().front().timepoints();
    if (o.ref_timepoint >= t) {
      throw UsageError(
              "--ref-timepoint " + std::to_string(o.ref_timepoint) + " out of range: study has " +
              std::to_string(t) + " time-points, valid range 0.." + std::to_string(t - 1));
    }
  }

  PipelineConfig cfg;
  cfg.ref_timepoint = o.ref_timepoint;
  std::vector<double> seconds;
  std::vector<SegmentationResult> results;
  try {
    results = segment_study(study, cfg, o.jobs, &seconds);
  } catch (const StudySegmentationError & e) {
    std::cerr << "segmentation failed for " << e.failures().size() << " slice(s):\n";
    for (const auto & f : e.failures()) {
      std::cerr << "  slice " << f.slice_index << ": " << f.message << "\n";
    }
    return kProcessingError;
  }

  fs::create_directories(o.out_dir);
  ordered_json slices = ordered_json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto s = study.slices()[i].slice_index();
    const auto & r = results[i];
    save_mask(r.roi_mask, fs::path(o.out_dir) / mask_name("roi", s));
    if (o.emit_intermediate) {
      save_mask(r.brain_mask, fs::path(o.out_dir) / mask_name("brain", s));
      slices.push_back(ordered_json{
          {"slice_index", s},
          {"t_low", round_real(r.t_low)},
          {"t_high", round_real(r.t_high)},
          {"crop_box", box_json(r.crop_box)},
          {"fallback_box", r.used_fallback_box}});
    }
    std::cerr << "slice " << s << ": " << seconds[i] << " s\n";
  }
  if (o.emit_intermediate) {
    ordered_json doc{{"ref_timepoint", o.ref_timepoint}, {"slices", std::move(slices)}};
    write_file(fs::path(o.out_dir) / "thresholds.json", doc.dump(2) + "\n");
  }
  return kOk;
}

std::optional<std::size_t> parse_index(const std::string & s)
{
  std::size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

std::map<std::string, fs::path> list_masks(const fs::path & dir, const std::string & prefix)
{
  if (!fs::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::map<std::string, fs::path> out;
  for (const auto & e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && e.path().extension() == ".pgm" && name.starts_with(prefix)) {
      out.emplace(name, e.path());
    }
  }
  return out;
}

int cmd_eval(const EvalOptions & o)
{
  const auto pred = list_masks(o.pred_dir, o.prefix);
  const auto ref = list_masks(o.ref_dir, o.prefix);

  std::vector<std::string> missing;
  for (const auto & [name, p] : ref) {
    if (!pred.contains(name)) {
      missing.push_back(name + " missing from " + o.pred_dir);
    }
  }
  for (const auto & [name, p] : pred) {
    if (!ref.contains(name)) {
      missing.push_back(name + " missing from " + o.ref_dir);
    }
  }
  if (!missing.empty()) {
    for (const auto & m : missing) {
      std::cerr << m << "\n";
    }
    return kProcessingError;
  }
  if (ref.empty()) {
    std::cerr << "no " << o.prefix << "*.pgm masks found\n";
    return kProcessingError;
  }

  std::optional<std::size_t> ref_tp;
  const auto thresholds = fs::path(o.pred_dir) / "thresholds.json";
  if (fs::exists(thresholds)) {
    const auto doc = nlohmann::json::parse(read_file(thresholds), nullptr, false);
    if (doc.is_object() && doc.contains("ref_timepoint") &&
      doc["ref_timepoint"].is_number_unsigned())
    {
      ref_tp = doc["ref_timepoint"].get<std::size_t>();
    }
  }

  std::vector<ImageEval> rows;
  std::size_t ordinal = 0;
  for (const auto & [name, ref_path] : ref) {
    const auto stem = fs::path(name).stem().string().substr(o.prefix.size());
    const auto slice = parse_index(stem).value_or(ordinal);
    ++ordinal;
    rows.push_back(ImageEval{
        name, slice, ref_tp, evaluate(load_mask(pred.at(name)), load_mask(ref_path))});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ImageEval & a, const ImageEval & b) {
      return a.slice < b.slice;
    });

  write_file(o.out, o.format == "csv" ? render_csv(rows) : render_json(rows));
  return kOk;
}

std::pair<std::size_t, std::size_t> parse_size(const std::string & s)
{
  static const std::regex re(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) {
    throw UsageError("--size must look like WIDTHxHEIGHT, got \"" + s + "\"");
  }
  return {std::stoul(m[1].str()), std::stoul(m[2].str())};
}

int cmd_phantom(const PhantomOptions & o)
{
  const auto [w, h] = parse_size(o.size);
  Phantom phantom;
  try {
    auto spec = make_preset(parse_preset(o.preset), w, h, o.timepoints, o.seed);
    spec.slices = o.slices;
    phantom = generate_phantom(spec);
  } catch (const InvalidSpec & e) {
    throw UsageError(std::string("invalid phantom spec: ") + e.what());
  }
  write_phantom(phantom, o.out_dir);
  return kOk;
}

std::string profile_csv(const ProjectionProfile & p)
{
  const auto d = first_derivative(p);
  std::string out = "index,std,derivative\n";
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    out += std::to_string(i) + "," + format_real(p.values[i]) + "," +
      format_real(d.values[i]) + "\n";
  }
  return out;
}

fs::path suffixed(const fs::path & p, const char * suffix)
{
  auto out = p;
  out.replace_filename(p.stem().string() + suffix + p.extension().string());
  return out;
}

int cmd_profile(const ProfileOptions & o)
{
  const auto img = load_image(o.image);
  if (o.axis == "h") {
    write_file(o.out, profile_csv(std_projection(img, Axis::Horizontal)));
  } else if (o.axis == "v") {
    write_file(o.out, profile_csv(std_projection(img, Axis::Vertical)));
  } else {
    write_file(suffixed(o.out, "_h"), profile_csv(std_projection(img, Axis::Horizontal)));
    write_file(suffixed(o.out, "_v"), profile_csv(std_projection(img, Axis::Vertical)));
  }
  return kOk;
}

std::size_t default_jobs()
{
  if (const char * env = std::getenv("PERFSEG_JOBS")) {
    if (auto v = parse_index(env)) {
      return *v;
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string> & args)
{
  CLI::App app{"Automated perfusion ROI detection for DSC MR image series", "perfseg"};
  app.require_subcommand(1);

  SegmentOptions seg;
  seg.jobs = default_jobs();
  auto * segment = app.add_subcommand("segment", "Segment every slice of a study");
  segment->add_option("--manifest", seg.manifest, "Study manifest (JSON)")->required();
  segment->add_option("--out-dir", seg.out_dir, "Output directory for masks")->required();
  segment->add_option("--ref-timepoint", seg.ref_timepoint, "Reference time-point index")
  ->capture_default_str();
  segment->add_flag("--emit-intermediate", seg.emit_intermediate,
    "Also write brain masks and thresholds.json");
  segment->add_option("--jobs", seg.jobs, "Parallel workers, 0 = all cores (env PERFSEG_JOBS)")
  ->capture_default_str();

  EvalOptions ev;
  auto * eval = app.add_subcommand("eval", "Compare predicted masks with reference masks");
  eval->add_option("--pred-dir", ev.pred_dir, "Predicted masks")->required();
  eval->add_option("--ref-dir", ev.ref_dir, "Reference masks")->required();
  eval->add_option("--format", ev.format, "Report format")
  ->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  eval->add_option("--out", ev.out, "Report path")->required();
  eval->add_option("--prefix", ev.prefix, "Mask file name prefix to pair")->capture_default_str();

  PhantomOptions ph;
  auto * phantom = app.add_subcommand("phantom", "Write a synthetic phantom study");
  phantom->add_option("--out-dir", ph.out_dir, "Output directory")->required();
  phantom->add_option("--seed", ph.seed, "Random seed")->capture_default_str();
  phantom->add_option("--preset", ph.preset, "Phantom preset")
  ->check(CLI::IsMember({"default", "lesion", "noiseless"}))->capture_default_str();
  phantom->add_option("--size", ph.size, "Image size WIDTHxHEIGHT")->capture_default_str();
  phantom->add_option("--timepoints", ph.timepoints, "Time-points per slice")
  ->capture_default_str();
  phantom->add_option("--slices", ph.slices, "Slice positions")->capture_default_str();

  ProfileOptions pr;
  auto * profile = app.add_subcommand("profile", "Dump projection profiles as CSV");
  profile->add_option("--image", pr.image, "16-bit PGM image")->required();
  profile->add_option("--axis", pr.axis, "h, v or both")
  ->check(CLI::IsMember({"h", "v", "both"}))->capture_default_str();
  profile->add_option("--out", pr.out, "CSV path (suffixed _h/_v for both)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*segment) {
      return cmd_segment(seg);
    }
    if (*eval) {
      return cmd_eval(ev);
    }
    if (*phantom) {
      return cmd_phantom(ph);
    }
    return cmd_profile(pr);
  } catch (const UsageError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProcessingError;
  } catch (const fs::filesystem_error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProcessingError;
  }
}

}  // namespace perfseg::cli
