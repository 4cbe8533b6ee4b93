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

#include "perfseg/metrics.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace perfseg
{

Confusion confusion(const BinaryMask & pred, const BinaryMask & ref)
{
  require_same_shape(pred, ref, "confusion");
  // counts indexed by (pred << 1) | ref
  std::array<std::size_t, 4> n{};
  const auto p = pred.bits();
  const auto r = ref.bits();
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++n[(p[i] << 1) | r[i]];
  }
  return Confusion{n[3], n[2], n[0], n[1]};
}

double dice(const Confusion & c)
{
  const std::size_t denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) {
    throw BothEmpty("dice undefined: prediction and reference are both empty");
  }
  return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

double dice(const BinaryMask & pred, const BinaryMask & ref)
{
  return dice(confusion(pred, ref));
}

double sensitivity(std::size_t tp, std::size_t fn)
{
  if (tp + fn == 0) {
    throw UndefinedFraction("sensitivity undefined: reference has no positives");
  }
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double specificity(std::size_t tn, std::size_t fp)
{
  if (tn + fp == 0) {
    throw UndefinedFraction("specificity undefined: reference has no negatives");
  }
  return static_cast<double>(tn) / static_cast<double>(tn + fp);
}

EvalMetrics evaluate(const BinaryMask & pred, const BinaryMask & ref)
{
  const auto c = confusion(pred, ref);
  return EvalMetrics{
    c.tp, c.fp, c.tn, c.fn, dice(c), sensitivity(c.tp, c.fn), specificity(c.tn, c.fp)};
}

MeanStd mean_std(std::span<const double> values)
{
  if (values.empty()) {
    throw EmptyInput("mean_std of an empty sequence");
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

CaseSummary summarize_case(std::span<const EvalMetrics> metrics)
{
  if (metrics.empty()) {
    throw EmptyInput("summarize_case needs at least one image");
  }
  std::vector<double> d, s, p;
  for (const auto & m : metrics) {
    d.push_back(m.dice);
    s.push_back(m.tpf);
    p.push_back(m.tnf);
  }
  return CaseSummary{metrics.size(), mean_std(d), mean_std(s), mean_std(p)};
}

std::string format_real(double v)
{
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 7);
  return std::string(buf.data(), res.ptr);
}

double round_real(double v)
{
  const auto s = format_real(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

namespace
{
std::string fixed(double v, int decimals)
{
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed,
      decimals);
  return std::string(buf.data(), res.ptr);
}
}  // namespace

std::string format_mean_std(const MeanStd & v, int decimals)
{
  return fixed(v.mean, decimals) + " ± " + fixed(v.std, decimals);
}

std::string format_case_row(const std::string & label, const CaseSummary & s, int decimals)
{
  return label + "\t" + format_mean_std(s.dice, decimals) + "\t" +
         format_mean_std(s.tpf, decimals) + "\t" + format_mean_std(s.tnf, decimals);
}

std::string format_case_table(
  const std::vector<std::pair<std::string, CaseSummary>> & cases, int decimals)
{
  std::string out = "Case\tMetrics\t\t\n\tSimilarity (DI)\tSensitivity (TPF)\tSpecificity (TNF)\n";
  for (const auto & [label, s] : cases) {
    out += format_case_row(label, s, decimals) + "\n";
  }
  return out;
}

std::string render_csv(const std::vector<ImageEval> & images)
{
  std::ostringstream os;
  os << "slice,timepoint_ref,dice,tpf,tnf,tp,fp,tn,fn\n";
  for (const auto & im : images) {
    const auto & m = im.metrics;
    os << im.slice << ',';
    if (im.timepoint_ref) {
      os << *im.timepoint_ref;
    }
    os << ',' << format_real(m.dice) << ',' << format_real(m.tpf) << ',' <<
      format_real(m.tnf) << ',' << m.tp << ',' << m.fp << ',' << m.tn << ',' << m.fn << '\n';
  }
  return os.str();
}

std::string render_json(const std::vector<ImageEval> & images)
{
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  std::vector<EvalMetrics> all;
  for (const auto & im : images) {
    const auto & m = im.metrics;
    ordered_json row;
    row["file"] = im.name;
    row["slice"] = im.slice;
    row["timepoint_ref"] = im.timepoint_ref ? ordered_json(*im.timepoint_ref) : ordered_json();
    row["dice"] = round_real(m.dice);
    row["tpf"] = round_real(m.tpf);
    row["tnf"] = round_real(m.tnf);
    row["tp"] = m.tp;
    row["fp"] = m.fp;
    row["tn"] = m.tn;
    row["fn"] = m.fn;
    rows.push_back(std::move(row));
    all.push_back(m);
  }
  ordered_json doc;
  doc["images"] = std::move(rows);
  if (all.empty()) {
    doc["summary"] = nullptr;
  } else {
    const auto s = summarize_case(all);
    auto ms = [](const MeanStd & v) {
        return ordered_json{{"mean", round_real(v.mean)}, {"std", round_real(v.std)}};
      };
    doc["summary"] = ordered_json{
      {"count", s.count}, {"dice", ms(s.dice)}, {"tpf", ms(s.tpf)}, {"tnf", ms(s.tnf)}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace perfseg
