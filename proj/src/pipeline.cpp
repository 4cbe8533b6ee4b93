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

#include "perfseg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <thread>

namespace perfseg
{

namespace
{
std::string describe(const std::vector<SliceFailure> & failures)
{
  std::string msg = std::to_string(failures.size()) + " slice(s) failed:";
  for (const auto & f : failures) {
    msg += "\n  slice " + std::to_string(f.slice_index) + ": " + f.message;
  }
  return msg;
}
}  // namespace

StudySegmentationError::StudySegmentationError(std::vector<SliceFailure> failures)
: SegmentationFailed(describe(failures)), failures_(std::move(failures))
{
}

std::vector<SegmentationResult> segment_study(const PerfusionStudy & study,
  const PipelineConfig & cfg, std::size_t jobs, std::vector<double> * slice_seconds)
{
  const auto & slices = study.slices();
  const std::size_t n = slices.size();
  if (slice_seconds) {
    slice_seconds->assign(n, 0.0);
  }
  if (n == 0) {
    return {};
  }
  if (jobs == 0) {
    jobs = std::max(1u, std::thread::hardware_concurrency());
  }
  jobs = std::min(jobs, n);

  std::vector<std::optional<SegmentationResult>> results(n);
  std::vector<std::optional<std::string>> errors(n);

  auto run_one = [&](std::size_t i) {
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = segment_slice(slices[i], cfg);
      } catch (const Error & e) {
        errors[i] = e.what();
      }
      if (slice_seconds) {
        (*slice_seconds)[i] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
    };

  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      run_one(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
          for (std::size_t i = next++; i < n; i = next++) {
            run_one(i);
          }
        });
    }
  }

  std::vector<SliceFailure> failures;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      failures.push_back({slices[i].slice_index(), *errors[i]});
    }
  }
  if (!failures.empty()) {
    throw StudySegmentationError(std::move(failures));
  }

  std::vector<SegmentationResult> out;
  out.reserve(n);
  for (auto & r : results) {
    out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace perfseg
