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

#include "scatter/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scatter/wav.hpp"

namespace scatter {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

// 17 significant digits round-trip every finite double.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

template <typename F>
double min_seconds_per_call(F&& f) {
  auto time_batch = [&](std::size_t reps) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  std::size_t reps = 1;
  double t = time_batch(reps);
  while (t < 0.02 && reps < (1u << 20)) {
    reps *= 2;
    t = time_batch(reps);
  }
  double best = t / static_cast<double>(reps);
  for (int b = 0; b < 5; ++b) best = std::min(best, time_batch(reps) / static_cast<double>(reps));
  return best;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

// strtod rather than stod: subnormal values must parse, not throw.
double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<double> normalize_input(std::span<const double> x) {
  double l1 = 0.0;
  for (double v : x) l1 += std::abs(v);
  if (!(l1 > 0.0) || !std::isfinite(l1))
    throw DegenerateInputError("normalize_input: signal is all zeros or not finite");
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v /= l1;
  return out;
}

std::vector<double> pad_to_pow2(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  out.resize(std::max<std::size_t>(next_pow2(std::max<std::size_t>(x.size(), 1)), 2), 0.0);
  return out;
}

std::vector<double> make_synthetic(const std::string& source, std::uint64_t seed) {
  const std::vector<std::string> parts = split(source, ':');
  if (parts.size() < 2) throw ParameterError("synthetic source must be kind:length[:param]: " + source);
  const std::string& kind = parts[0];
  std::size_t n = 0;
  std::optional<double> param;
  try {
    n = std::stoul(parts[1]);
    if (parts.size() > 2) param = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw ParameterError("malformed synthetic source: " + source);
  }
  if (n == 0) throw ParameterError("synthetic length must be positive: " + source);

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> x(n);
  if (kind == "noise") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    for (double& v : x) v = dist(rng);
  } else if (kind == "tone") {
    const double f = param.value_or(0.05);
    for (std::size_t t = 0; t < n; ++t) x[t] = std::sin(two_pi * f * static_cast<double>(t));
  } else if (kind == "chirp") {
    // Linear sweep from 0.01 to 0.45 cycles/sample.
    const double f0 = 0.01, f1 = param.value_or(0.45);
    for (std::size_t t = 0; t < n; ++t) {
      const double s = static_cast<double>(t);
      x[t] = std::sin(two_pi * (f0 * s + 0.5 * (f1 - f0) * s * s / static_cast<double>(n)));
    }
  } else if (kind == "constant") {
    std::fill(x.begin(), x.end(), param.value_or(1.0));
  } else if (kind == "impulse") {
    x[static_cast<std::size_t>(param.value_or(0.0)) % n] = 1.0;
  } else {
    throw ParameterError("unknown synthetic kind: " + kind);
  }
  return x;
}

std::shared_ptr<const std::vector<FilterBank>> BankCache::get(std::size_t n,
                                                              const ScatterConfig& config) {
  Key key{n, config.epsilon, {}};
  for (const auto& l : config.layers) std::get<2>(key).emplace_back(l.q, l.j, l.scaling.sigma());

  std::lock_guard lock(mutex_);
  auto it = banks_.find(key);
  if (it != banks_.end()) return it->second;
  auto banks = std::make_shared<const std::vector<FilterBank>>(make_banks(n, config));
  banks_.emplace(std::move(key), banks);
  return banks;
}

std::size_t BankCache::size() const {
  std::lock_guard lock(mutex_);
  return banks_.size();
}

FeatureRecord extract_signal(const std::string& source, std::span<const double> samples,
                             std::uint32_t sample_rate, const ScatterConfig& config,
                             BankCache& cache) {
  const std::vector<double> x = pad_to_pow2(normalize_input(samples));
  const auto banks = cache.get(x.size(), config);
  ScatterResult result = scatter_detailed(x, *banks, config);

  FeatureRecord rec;
  rec.source = source;
  rec.n = x.size();
  rec.original_length = samples.size();
  rec.sample_rate = sample_rate;
  rec.features = std::move(result.features);
  rec.telemetry = std::move(result.layers);
  return rec;
}

ExtractResult run_extract(const PipelineConfig& config) {
  config.scatter.validate();

  struct Job {
    std::string source;
    std::optional<std::filesystem::path> path;
  };
  std::vector<Job> jobs;
  for (const auto& p : config.inputs) jobs.push_back({p.string(), p});
  for (const auto& s : config.synthetic) jobs.push_back({s, std::nullopt});
  if (jobs.empty()) throw ParameterError("run_extract: no input files or synthetic sources");

  BankCache cache;
  std::vector<std::optional<FeatureRecord>> done(jobs.size());
  std::vector<std::string> failures(jobs.size());

  auto work = [&](std::size_t i) {
    try {
      if (jobs[i].path) {
        const WavData wav = ingest_wav(*jobs[i].path);
        done[i] = extract_signal(jobs[i].source, wav.samples, wav.sample_rate, config.scatter, cache);
      } else {
        const std::vector<double> x = make_synthetic(jobs[i].source, config.seed + i);
        done[i] = extract_signal(jobs[i].source, x, 0, config.scatter, cache);
      }
    } catch (const std::exception& e) {
      failures[i] = jobs[i].source + ": " + e.what();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(config.file_workers, 1, jobs.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < jobs.size(); i += workers) work(i);
      });
  }

  ExtractResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (done[i]) {
      result.records.push_back(std::move(*done[i]));
    } else {
      result.errors.push_back(failures[i]);
    }
  }
  if (result.records.empty()) {
    result.exit_code = 1;
  } else {
    result.exit_code = result.errors.empty() ? 0 : 2;
    if (!config.output.empty())
      export_features({config.scatter, result.records, config.include_timings}, config.format,
                      config.output);
  }
  return result;
}

BenchReport run_bench(const PipelineConfig& config) {
  const ScatterConfig& sc = config.scatter;
  sc.validate();
  if (config.bench_log2_sizes.empty()) throw ParameterError("run_bench: no sizes given");

  BenchReport report;
  std::size_t sink = 0;
  for (int k : config.bench_log2_sizes) {
    if (k < 1 || k > 30) throw ParameterError("run_bench: size exponent out of range");
    const std::size_t n = std::size_t{1} << k;
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> dist;
    std::vector<double> raw(n);
    for (double& v : raw) v = dist(rng);
    const std::vector<double> x = normalize_input(raw);

    BenchRow row;
    row.n = n;
    const LayerParams& first = sc.layers.front();
    row.t_bank = min_seconds_per_call([&] {
      sink += generate_filterbank(n, first.q, first.j, sc.epsilon, true, first.scaling).nonzeros();
    });

    const std::vector<FilterBank> banks = make_banks(n, sc);
    row.bank_sparsity = banks.front().sparsity_percent();
    const LayerRepresentation layer0 = input_layer(x);

    auto start = Clock::now();
    const LayerRepresentation layer1 =
        forward_layer(layer0, banks[0], sc.workers, sc.skip_empty_parents);
    row.t_layer1 = std::chrono::duration<double>(Clock::now() - start).count();
    row.nnz_layer1 = layer1.nonzeros();
    row.sparsity_layer1 =
        100.0 * (1.0 - static_cast<double>(row.nnz_layer1) /
                           (static_cast<double>(layer1.nodes.size()) * static_cast<double>(n / 2 + 1)));

    if (banks.size() > 1) {
      start = Clock::now();
      const LayerRepresentation layer2 =
          forward_layer(layer1, banks[1], sc.workers, sc.skip_empty_parents);
      row.t_layer2 = std::chrono::duration<double>(Clock::now() - start).count();
      row.nnz_layer2 = layer2.nonzeros();
      row.sparsity_layer2 =
          100.0 * (1.0 - static_cast<double>(row.nnz_layer2) /
                             (static_cast<double>(layer2.nodes.size()) * static_cast<double>(n / 2 + 1)));
    }
    report.rows.push_back(row);
  }
  volatile std::size_t keep = sink;
  (void)keep;

  std::vector<double> xs, ys;
  for (const auto& r : report.rows) {
    xs.push_back(static_cast<double>(r.n));
    ys.push_back(static_cast<double>(r.nnz_layer1));
  }
  report.nnz_layer1_r2 = linear_fit_r2(xs, ys);
  return report;
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = std::min(x.size(), y.size());
  if (m < 2) return 1.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0.0) return 1.0;
  if (sxx == 0.0) return 0.0;
  return (sxy * sxy) / (sxx * syy);
}

std::string bench_to_csv(const BenchReport& report) {
  std::string out =
      "n,t_bank,t_layer1,t_layer2,nnz_layer1,nnz_layer2,sparsity_layer1,sparsity_layer2,"
      "bank_sparsity\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + "," + num(r.t_bank) + "," + num(r.t_layer1) + "," +
           num(r.t_layer2) + "," + std::to_string(r.nnz_layer1) + "," +
           std::to_string(r.nnz_layer2) + "," + num(r.sparsity_layer1) + "," +
           num(r.sparsity_layer2) + "," + num(r.bank_sparsity) + "\n";
  }
  return out;
}

std::string bank_stats_json(const FilterBank& bank) {
  json doc;
  doc["n"] = bank.n;
  doc["q"] = bank.q;
  doc["j"] = bank.j;
  doc["epsilon"] = bank.epsilon;
  doc["normalized"] = bank.normalized;
  doc["scales"] = bank.scales;
  json supports = json::array();
  for (const auto& f : bank.filters) {
    if (f.support.empty()) {
      supports.push_back(nullptr);
    } else {
      supports.push_back({f.support.lo(), f.support.hi()});
    }
  }
  doc["supports"] = supports;
  doc["nonzeros"] = bank.nonzeros();
  doc["sparsity_percent"] = bank.sparsity_percent();
  return doc.dump(2);
}

std::string format_json(const FeatureDocument& doc) {
  std::string out = "{\n  \"config\": {\n    \"layers\": [";
  for (std::size_t l = 0; l < doc.config.layers.size(); ++l) {
    const LayerParams& p = doc.config.layers[l];
    out += (l ? ", " : "") + std::string("{\"q\": ") + std::to_string(p.q) +
           ", \"j\": " + std::to_string(p.j) + ", \"sigma\": " +
           (p.scaling.is_infinite() ? std::string("\"infinite\"") : num(p.scaling.sigma())) + "}";
  }
  out += "],\n    \"epsilon\": " + num(doc.config.epsilon) + ",\n    \"normalized\": true\n  },\n";
  out += "  \"records\": [";
  for (std::size_t r = 0; r < doc.records.size(); ++r) {
    const FeatureRecord& rec = doc.records[r];
    out += r ? ",\n" : "\n";
    out += "    {\n      \"source\": " + quoted(rec.source) + ",\n      \"n\": " +
           std::to_string(rec.n) + ",\n      \"original_length\": " +
           std::to_string(rec.original_length) + ",\n      \"sample_rate\": " +
           std::to_string(rec.sample_rate) + ",\n      \"features\": [";
    for (std::size_t i = 0; i < rec.features.entries.size(); ++i) {
      const FeatureEntry& e = rec.features.entries[i];
      out += i ? ",\n" : "\n";
      out += "        {\"path\": [";
      for (std::size_t k = 0; k < e.path.indices.size(); ++k)
        out += (k ? ", " : "") + std::to_string(e.path.indices[k]);
      out += "], \"s\": " + num(e.s) + ", \"v\": " + num(e.v) + "}";
    }
    out += "\n      ],\n      \"telemetry\": [";
    for (std::size_t l = 0; l < rec.telemetry.size(); ++l) {
      const LayerTelemetry& t = rec.telemetry[l];
      out += l ? ",\n" : "\n";
      out += "        {\"layer\": " + std::to_string(l) + ", \"nodes\": " + std::to_string(t.nodes) +
             ", \"nonzeros\": " + std::to_string(t.nonzeros) +
             ", \"sparsity_percent\": " + num(t.sparsity_percent) + ", \"energy\": " + num(t.energy);
      if (t.partition_ratio) out += ", \"partition_ratio\": " + num(*t.partition_ratio);
      if (doc.include_timings) out += ", \"seconds\": " + num(t.seconds);
      out += "}";
    }
    out += "\n      ]\n    }";
  }
  out += doc.records.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string format_csv(const FeatureDocument& doc) {
  const std::size_t depth = doc.config.layers.size();
  std::string out = "source,layer";
  for (std::size_t l = 1; l <= depth; ++l) out += ",i" + std::to_string(l);
  out += ",s,v\n";
  for (const auto& rec : doc.records) {
    const std::string source = csv_field(rec.source);
    for (const auto& e : rec.features.entries) {
      out += source + "," + std::to_string(e.path.depth());
      for (std::size_t l = 0; l < depth; ++l)
        out += "," + (l < e.path.depth() ? std::to_string(e.path.indices[l]) : std::string());
      out += "," + num(e.s) + "," + num(e.v) + "\n";
    }
  }
  return out;
}

FeatureDocument parse_json(const std::string& text) {
  FeatureDocument doc;
  try {
    const json root = json::parse(text);
    const json& cfg = root.at("config");
    for (const auto& l : cfg.at("layers")) {
      LayerParams p;
      p.q = l.at("q").get<int>();
      p.j = l.at("j").get<int>();
      const json& sigma = l.at("sigma");
      p.scaling = sigma.is_string() ? kInfiniteTimeSupport : ScalingWidth::finite(sigma.get<double>());
      doc.config.layers.push_back(p);
    }
    doc.config.epsilon = cfg.at("epsilon").get<double>();

    for (const auto& r : root.at("records")) {
      FeatureRecord rec;
      rec.source = r.at("source").get<std::string>();
      rec.n = r.at("n").get<std::size_t>();
      rec.original_length = r.at("original_length").get<std::size_t>();
      rec.sample_rate = r.at("sample_rate").get<std::uint32_t>();
      for (const auto& f : r.at("features")) {
        FeatureEntry e;
        e.path.indices = f.at("path").get<std::vector<std::size_t>>();
        e.s = f.at("s").get<double>();
        e.v = f.at("v").get<double>();
        rec.features.entries.push_back(std::move(e));
      }
      for (const auto& t : r.at("telemetry")) {
        LayerTelemetry lt;
        lt.nodes = t.at("nodes").get<std::size_t>();
        lt.nonzeros = t.at("nonzeros").get<std::size_t>();
        lt.sparsity_percent = t.at("sparsity_percent").get<double>();
        lt.energy = t.at("energy").get<double>();
        if (t.contains("partition_ratio")) lt.partition_ratio = t.at("partition_ratio").get<double>();
        if (t.contains("seconds")) {
          lt.seconds = t.at("seconds").get<double>();
          doc.include_timings = true;
        }
        rec.telemetry.push_back(lt);
      }
      doc.records.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid feature document: ") + e.what(), 0);
  }
  return doc;
}

FeatureDocument parse_csv(const std::string& text) {
  FeatureDocument doc;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty CSV document", 0);
  const std::vector<std::string> header = csv_row(line);
  if (header.size() < 4 || header[0] != "source" || header[1] != "layer")
    throw FormatError("unexpected CSV header", 0);
  const std::size_t depth = header.size() - 4;
  doc.config.layers.resize(depth);

  std::uint64_t offset = line.size() + 1;
  while (std::getline(in, line)) {
    const std::vector<std::string> row = csv_row(line);
    if (row.size() != header.size()) throw FormatError("CSV row has wrong field count", offset);
    try {
      const std::size_t layer = std::stoul(row[1]);
      FeatureEntry e;
      for (std::size_t l = 0; l < layer; ++l) e.path.indices.push_back(std::stoul(row[2 + l]));
      e.s = parse_double(row[2 + depth]);
      e.v = parse_double(row[3 + depth]);
      if (doc.records.empty() || doc.records.back().source != row[0]) {
        doc.records.emplace_back();
        doc.records.back().source = row[0];
      }
      doc.records.back().features.entries.push_back(std::move(e));
    } catch (const std::logic_error&) {
      throw FormatError("malformed CSV row", offset);
    }
    offset += line.size() + 1;
  }
  return doc;
}

void export_features(const FeatureDocument& doc, OutputFormat format,
                     const std::filesystem::path& path) {
  const std::string text = format == OutputFormat::kJson ? format_json(doc) : format_csv(doc);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("short write to " + path.string());
}

FeatureDocument import_features(const std::filesystem::path& path, OutputFormat format) {
  const std::string text = read_file(path);
  return format == OutputFormat::kJson ? parse_json(text) : parse_csv(text);
}

}  // namespace scatter
