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

#ifndef PERFSEG__METRICS_HPP_
#define PERFSEG__METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perfseg/types.hpp"

namespace perfseg
{

struct Confusion
{
  std::size_t tp{};
  std::size_t fp{};
  std::size_t tn{};
  std::size_t fn{};

  bool operator==(const Confusion &) const = default;
};

struct EvalMetrics
{
  std::size_t tp{};
  std::size_t fp{};
  std::size_t tn{};
  std::size_t fn{};
  double dice{};
  /// sensitivity
  double tpf{};
  /// specificity
  double tnf{};
};

struct MeanStd
{
  double mean{};
  double std{};
};

/// Per-case aggregate, sample std (0 for a single image).
struct CaseSummary
{
  std::size_t count{};
  MeanStd dice;
  MeanStd tpf;
  MeanStd tnf;
};

/// Throws DimensionMismatch.
Confusion confusion(const BinaryMask & pred, const BinaryMask & ref);

/// 2|P & R| / (|P| + |R|). Throws BothEmpty when both masks are empty.
double dice(const BinaryMask & pred, const BinaryMask & ref);
double dice(const Confusion & c);

/// tp / (tp + fn). Throws UndefinedFraction on a zero denominator.
double sensitivity(std::size_t tp, std::size_t fn);
/// tn / (tn + fp). Throws UndefinedFraction on a zero denominator.
double specificity(std::size_t tn, std::size_t fp);

/// Confusion counts plus all three ratios; throws if any ratio is undefined.
EvalMetrics evaluate(const BinaryMask & pred, const BinaryMask & ref);

/// Throws EmptyInput on an empty sequence.
CaseSummary summarize_case(std::span<const EvalMetrics> metrics);
MeanStd mean_std(std::span<const double> values);

// ---------------------------------------------------------------------------
// Report rendering

/// Real number with 7 significant digits (shortest form, nearest-even on
/// exact ties). Used for every real written to JSON or CSV.
std::string format_real(double v);
/// Value of `format_real(v)` read back as a double.
double round_real(double v);

/// "0.9835 ± 0.0118" with a fixed number of decimals.
std::string format_mean_std(const MeanStd & v, int decimals = 4);

/// One table row: label, DI, TPF and TNF as "mean ± std", tab separated.
std::string format_case_row(const std::string & label, const CaseSummary & s, int decimals = 4);

/// Table of per-case rows with a two-line header.
std::string format_case_table(
  const std::vector<std::pair<std::string, CaseSummary>> & cases, int decimals = 4);

/// One evaluated image in a report.
struct ImageEval
{
  std::string name;
  std::size_t slice{};
  std::optional<std::size_t> timepoint_ref;
  EvalMetrics metrics;
};

/// CSV, one row per image: slice,timepoint_ref,dice,tpf,tnf,tp,fp,tn,fn
std::string render_csv(const std::vector<ImageEval> & images);
/// JSON object with "images" (per-image rows) and "summary" (CaseSummary).
std::string render_json(const std::vector<ImageEval> & images);

}  // namespace perfseg

#endif  // PERFSEG__METRICS_HPP_
