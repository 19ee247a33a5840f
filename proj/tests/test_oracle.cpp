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

#include <doctest.h>

#include "scatter/oracle.hpp"
#include "test_util.hpp"

using namespace scatter;
using namespace scatter::testing;

TEST_CASE("oracle: impulse through a unit filter keeps the nonnegative frequencies") {
  const std::size_t n = 16;
  oracle::DenseFilter unit;
  unit.values.assign(n / 2 + 1, 1.0);
  std::vector<cplx> delta(n);
  delta[0] = 1.0;
  const auto y = oracle::oracle_convolve(delta, unit);
  std::vector<cplx> want_spec(n);
  for (std::size_t k = 0; k <= n / 2; ++k) want_spec[k] = 1.0;
  const auto want = direct_dft(want_spec, +1);
  for (std::size_t t = 0; t < n; ++t) CHECK(std::abs(y[t] - want[t] / double(n)) < 1e-14);
}

TEST_CASE("oracle: convolution equals the circular sum with the impulse response") {
  const std::size_t n = 64;
  const auto bank = oracle::dense_bank(n, 2, 3);
  const auto xr = random_real(n, 21);
  const std::vector<cplx> x(xr.begin(), xr.end());
  for (const auto& f : bank) {
    const auto g = oracle::impulse_response(f, n);
    const auto y = oracle::oracle_convolve(x, f);
    std::vector<cplx> ref(n);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t s = 0; s < n; ++s) ref[t] += x[s] * g[(t + n - s) % n];
    CHECK(max_abs_diff(y, ref) <= 1e-12 * std::max(max_abs(ref), 1e-3));
  }
}

TEST_CASE("oracle: constant input has no wavelet response") {
  const std::size_t n = 32;
  const std::vector<cplx> x(n, cplx{0.5, 0});
  for (const auto& f : oracle::dense_bank(n, 1, 3)) {
    CHECK(f.values[0] == 0.0);
    CHECK(max_abs(oracle::oracle_convolve(x, f)) < 1e-15);
  }
}

TEST_CASE("oracle: dense bank is a partition of unity where it is covered") {
  const std::size_t n = 512;
  const auto bank = oracle::dense_bank(n, 4, 3);
  CHECK(bank.size() == 13);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    double raw_scale = 0.0, total = 0.0;
    for (const auto& f : bank) total += f.values[k];
    raw_scale = total;
    if (raw_scale > 0.5) CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("oracle: layer-0 dispersion is n times the variance") {
  const std::size_t n = 128;
  const auto x = random_real(n, 5);
  ScatterConfig config;
  config.layers = {{1, 2, kInfiniteTimeSupport}};
  const FeatureVector fv = oracle::oracle_scatter(x, config);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= double(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean) / double(n);
  CHECK(rel_err(fv.entries[0].s, mean) < 1e-12);
  CHECK(rel_err(fv.entries[0].v, double(n) * var) < 1e-12);
  CHECK(fv.entries.size() == 1 + 3);
}
