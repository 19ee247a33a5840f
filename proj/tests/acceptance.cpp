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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "scatter/oracle.hpp"
#include "scatter/pipeline.hpp"
#include "test_util.hpp"

using namespace scatter;
using namespace scatter::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ScatterConfig config_of(int q1, int j1, int q2, int j2, double eps) {
  ScatterConfig c;
  c.layers = {{q1, j1, kInfiniteTimeSupport}, {q2, j2, kInfiniteTimeSupport}};
  c.epsilon = eps;
  return c;
}

double feature_rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-14);
}

void table1_sparsity() {
  const std::size_t n19 = std::size_t{1} << 19;
  const auto start = Clock::now();
  const double s4 = generate_filterbank(n19, 16, 9, 1e-4, true).sparsity_percent();
  const double s7 = generate_filterbank(n19, 16, 9, 1e-7, true).sparsity_percent();
  const double elapsed = seconds_since(start) / 2.0;
  double drift = 0.0;
  for (int p : {20, 21}) {
    const std::size_t n = std::size_t{1} << p;
    drift = std::max(drift, std::abs(generate_filterbank(n, 16, 9, 1e-4, true).sparsity_percent() - s4));
    drift = std::max(drift, std::abs(generate_filterbank(n, 16, 9, 1e-7, true).sparsity_percent() - s7));
  }
  const bool ok = std::abs(s4 - 98.39883) <= 0.05 && std::abs(s7 - 97.89803) <= 0.05 &&
                  elapsed < 5.0 && drift <= 0.001;
  report("table1-sparsity", ok,
         fmt("eps=1e-4 %.5f%% (want 98.39883), eps=1e-7 %.5f%% (want 97.89803), "
             "%.3fs per bank, n-drift %.2e pp",
             s4, s7, elapsed, drift));
}

void oracle_equivalence() {
  const std::size_t n = 256;
  const ScatterConfig config = config_of(2, 3, 1, 3, 1e-12);
  const auto start = Clock::now();
  const auto banks = make_banks(n, config);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto x = l1_normalized(random_real(n, 1000 + i));
    const FeatureVector fast = scatter::scatter(x, banks, config);
    const FeatureVector slow = oracle::oracle_scatter(x, config);
    if (fast.entries.size() != slow.entries.size()) {
      worst = INFINITY;
      break;
    }
    for (std::size_t k = 0; k < fast.entries.size(); ++k) {
      worst = std::max(worst, feature_rel_err(fast.entries[k].s, slow.entries[k].s));
      worst = std::max(worst, feature_rel_err(fast.entries[k].v, slow.entries[k].v));
    }
  }
  const double elapsed = seconds_since(start);
  report("oracle-equivalence", worst < 1e-6 && elapsed < 30.0,
         fmt("max relative error %.3e over 20 signals, %.2fs", worst, elapsed));
}

void translation_invariance() {
  const std::size_t n = 1024;
  const ScatterConfig config = config_of(16, 5, 1, 5, 1e-4);
  const auto banks = make_banks(n, config);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> shift(1, n - 1);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto x = l1_normalized(random_real(n, 2000 + i));
    const FeatureVector base = scatter::scatter(x, banks, config);
    for (int r = 0; r < 10; ++r) {
      const std::size_t s = shift(rng);
      std::vector<double> y(n);
      for (std::size_t t = 0; t < n; ++t) y[(t + s) % n] = x[t];
      const FeatureVector moved = scatter::scatter(y, banks, config);
      for (std::size_t k = 0; k < base.entries.size(); ++k) {
        worst = std::max(worst, feature_rel_err(moved.entries[k].s, base.entries[k].s));
        worst = std::max(worst, feature_rel_err(moved.entries[k].v, base.entries[k].v));
      }
    }
  }
  report("translation-invariance", worst < 1e-8, fmt("max relative deviation %.3e over 100 shifts", worst));
}

void reconstruction() {
  const std::size_t n = std::size_t{1} << 12;
  const FilterBank raw = generate_filterbank(n, 4, 4, 1e-4, false);
  const FilterBank bank = renormalize_littlewood_paley(raw);
  const std::vector<double> raw_total = bank_sum(raw);
  const std::vector<double> total = bank_sum(bank);

  std::size_t lo = n, hi = 0;
  double residual = 0.0;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    if (raw_total[k] <= kCoveredBandFloor) continue;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    residual = std::max(residual, std::abs(total[k] - 1.0));
  }

  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const HalfSpectrum h(n, BinRange::closed(lo, hi), random_complex(hi - lo + 1, 3000 + i));
    const HalfSpectrum back = reconstruct_band(h, bank);
    double err = 0.0, norm = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
      err += std::norm(back.at(k) - h.at(k));
      norm += std::norm(h.at(k));
    }
    worst = std::max(worst, std::sqrt(err / norm));
  }
  report("reconstruction", worst < 1e-9 && residual < 1e-9,
         fmt("covered bins %zu..%zu, max relative L2 error %.3e, partition residual %.3e", lo, hi,
             worst, residual));
}

void lipschitz() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> radius(0.0, 1.0), angle(0.0, 2.0 * std::numbers::pi);
  std::size_t violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const cplx a = std::polar(std::sqrt(radius(rng)), angle(rng));
    const cplx b = std::polar(std::sqrt(radius(rng)), angle(rng));
    const double lhs = std::abs(quadratic_pointwise(a) - quadratic_pointwise(b));
    const double rhs = (std::abs(a) + std::abs(b)) * std::abs(a - b);
    if (lhs > rhs + 1e-15) ++violations;
  }
  report("lipschitz", violations == 0, fmt("%zu violations in 100000 pairs", violations));
}

void plancherel() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = std::size_t{64} << (i % 7);
    const auto x = random_real(n, 5000 + i);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const LayerRepresentation l0 = input_layer(x);
    worst = std::max(worst, rel_err(extract_dispersion(l0.nodes.front().second), ss));
  }
  report("plancherel", worst < 1e-10, fmt("max relative error %.3e over 100 signals", worst));
}

void scalability() {
  PipelineConfig pc;
  pc.scatter = config_of(16, 5, 1, 5, 1e-4);
  for (int p = 12; p <= 18; ++p) pc.bench_log2_sizes.push_back(p);
  const BenchReport r = run_bench(pc);
  // Consecutive pairs that are a factor of four apart.
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i + 2 < r.rows.size(); ++i) {
    const double ratio = r.rows[i + 2].t_bank / r.rows[i].t_bank;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const bool ok = r.nnz_layer1_r2 > 0.99 && lo >= 2.0 && hi <= 8.0;
  report("scalability", ok,
         fmt("layer-1 nnz R^2 %.6f, bank time ratio t(4n)/t(n) in [%.2f, %.2f]", r.nnz_layer1_r2, lo,
             hi));
}

void energy_monotonicity() {
  const ScatterConfig config = config_of(16, 5, 1, 5, 1e-4);
  BankCache cache;
  std::size_t violations = 0, signals = 0;
  auto check = [&](const std::vector<double>& raw) {
    const FeatureRecord rec = extract_signal("", raw, 0, config, cache);
    ++signals;
    if (rec.telemetry[2].energy > rec.telemetry[1].energy * (1.0 + 1e-12)) ++violations;
  };
  for (int i = 0; i < 100; ++i) check(random_real(1024, 6000 + i));
  for (int i = 0; i < 5; ++i) {
    check(make_synthetic("chirp:" + std::to_string(1024 << (i % 3)), 0));
    check(make_synthetic("tone:" + std::to_string(1024 << (i % 3)) + ":" + std::to_string(0.02 + 0.09 * i), 0));
  }
  report("energy-monotonicity", violations == 0,
         fmt("%zu violations in %zu signals", violations, signals));
}

}  // namespace

int main() {
  table1_sparsity();
  oracle_equivalence();
  translation_invariance();
  reconstruction();
  lipschitz();
  plancherel();
  scalability();
  energy_monotonicity();
  return failures == 0 ? 0 : 1;
}
