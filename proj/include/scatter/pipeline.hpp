// Copyright 2026 The scatter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "scatter/filterbank.hpp"
#include "scatter/scattering.hpp"

namespace scatter {

enum class OutputFormat { kJson, kCsv };

inline constexpr std::uint64_t kDefaultSeed = 20170101;

struct PipelineConfig {
  ScatterConfig scatter;
  std::vector<std::filesystem::path> inputs;
  // Synthetic sources, e.g. "noise:4096", "tone:4096:0.05", "chirp:8192".
  std::vector<std::string> synthetic;
  std::filesystem::path output;
  OutputFormat format = OutputFormat::kJson;
  std::uint64_t seed = kDefaultSeed;
  // Wall times make the output nondeterministic, so they are opt-in.
  bool include_timings = false;
  unsigned file_workers = 1;
  std::vector<int> bench_log2_sizes;
};

struct FeatureRecord {
  std::string source;
  std::size_t n = 0;
  std::size_t original_length = 0;
  std::uint32_t sample_rate = 0;
  FeatureVector features;
  std::vector<LayerTelemetry> telemetry;  // layer 0 first
};

struct ExtractResult {
  std::vector<FeatureRecord> records;  // input order, failures omitted
  std::vector<std::string> errors;
  int exit_code = 0;                   // 0 ok, 1 all failed, 2 partial
};

/// x / sum |x|. Throws DegenerateInputError for an all-zero input.
std::vector<double> normalize_input(std::span<const double> x);

/// Zero-pads to the next power of two, with a minimum length of 2.
std::vector<double> pad_to_pow2(std::span<const double> x);

/// Deterministic synthetic signal for a "kind:length[:param]" source.
std::vector<double> make_synthetic(const std::string& source, std::uint64_t seed);

/// Normalized banks keyed by (n, per-layer q/j/scaling, epsilon). Thread-safe.
class BankCache {
 public:
  std::shared_ptr<const std::vector<FilterBank>> get(std::size_t n, const ScatterConfig& config);
  std::size_t size() const;

 private:
  using Key = std::tuple<std::size_t, double, std::vector<std::tuple<int, int, double>>>;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const std::vector<FilterBank>>> banks_;
};

/// normalize -> pad -> scatter for one already-decoded signal.
FeatureRecord extract_signal(const std::string& source, std::span<const double> samples,
                             std::uint32_t sample_rate, const ScatterConfig& config,
                             BankCache& cache);

ExtractResult run_extract(const PipelineConfig& config);

struct BenchRow {
  std::size_t n = 0;
  double t_bank = 0.0;
  double t_layer1 = 0.0;
  double t_layer2 = 0.0;
  std::size_t nnz_layer1 = 0;
  std::size_t nnz_layer2 = 0;
  double sparsity_layer1 = 0.0;
  double sparsity_layer2 = 0.0;
  double bank_sparsity = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double nnz_layer1_r2 = 0.0;
};

BenchReport run_bench(const PipelineConfig& config);

/// Coefficient of determination of the least-squares line through (x, y).
double linear_fit_r2(std::span<const double> x, std::span<const double> y);

std::string bench_to_csv(const BenchReport& report);

/// Bank description: n, q, j, epsilon, normalized, scales, supports, sparsity.
std::string bank_stats_json(const FilterBank& bank);

struct FeatureDocument {
  ScatterConfig config;
  std::vector<FeatureRecord> records;
  bool include_timings = false;
};

std::string format_json(const FeatureDocument& doc);
std::string format_csv(const FeatureDocument& doc);
FeatureDocument parse_json(const std::string& text);
FeatureDocument parse_csv(const std::string& text);

void export_features(const FeatureDocument& doc, OutputFormat format,
                     const std::filesystem::path& path);
FeatureDocument import_features(const std::filesystem::path& path, OutputFormat format);

}  // namespace scatter
