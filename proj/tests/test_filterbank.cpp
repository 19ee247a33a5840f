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

#include <cmath>
#include <numbers>

#include "scatter/filterbank.hpp"
#include "scatter/scattering.hpp"
#include "test_util.hpp"

using namespace scatter;
using namespace scatter::testing;

namespace {

constexpr double kPi = std::numbers::pi;

double omega(std::size_t k, std::size_t n) { return 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n); }

// Every bin of the closed-form response, evaluated without any support logic.
void check_against_dense(const FourierFilter& f, double lambda, const MotherParams& m, double eps) {
  const std::size_t n = f.n;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double w = omega(k, n);
    const double dense =
        k == 0 ? 0.0
               : std::exp(-std::pow(w - m.mu0 / lambda, 2) / (2.0 * std::pow(m.sigma0 / lambda, 2)));
    if (f.support.contains(k)) {
      CHECK(f.at(k) > eps);
      CHECK(std::abs(f.at(k) - dense) <= 1e-15);
    } else {
      CHECK(dense <= eps);
    }
  }
}

}  // namespace

TEST_CASE("build_scale_set: examples") {
  const auto a = build_scale_set(1, 2);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 2.0);
  CHECK(a[2] == 4.0);

  const auto b = build_scale_set(2, 1);
  REQUIRE(b.size() == 3);
  CHECK(b[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(b[2] == 2.0);

  const auto c = build_scale_set(16, 9);
  CHECK(c.size() == 145);
  CHECK(c.back() == 512.0);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);

  CHECK_THROWS_AS(build_scale_set(0, 3), ParameterError);
  CHECK_THROWS_AS(build_scale_set(3, 0), ParameterError);
}

TEST_CASE("mother_params: closed forms") {
  const MotherParams q1 = mother_params(1);
  CHECK(q1.mu0 == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-15));
  CHECK(q1.sigma0 == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));

  // Independently evaluated: (pi/2)(2^(-1/16)+1), sqrt(3)(1-2^(-1/16)).
  const MotherParams q16 = mother_params(16);
  CHECK(q16.mu0 == doctest::Approx(3.0749960426429586).epsilon(1e-14));
  CHECK(q16.sigma0 == doctest::Approx(0.07343327190430643).epsilon(1e-14));

  CHECK_THROWS_AS(mother_params(0), ParameterError);
}

TEST_CASE("mother_params: mu0 rises toward pi, sigma0 falls toward 0") {
  MotherParams prev = mother_params(1);
  for (int q = 2; q <= 64; ++q) {
    const MotherParams m = mother_params(q);
    CHECK(m.mu0 > prev.mu0);
    CHECK(m.mu0 < kPi);
    CHECK(m.sigma0 < prev.sigma0);
    CHECK(m.sigma0 > 0.0);
    prev = m;
  }
}

TEST_CASE("morlet_support: examples") {
  const MotherParams m = mother_params(4);
  const double eps = std::exp(-2.0);
  const FrequencyInterval s = morlet_support(1.0, m, eps);
  CHECK(s.lo == doctest::Approx(m.mu0 - 2.0 * m.sigma0).epsilon(1e-14));
  CHECK(s.hi == doctest::Approx(std::min(m.mu0 + 2.0 * m.sigma0, kPi)).epsilon(1e-14));

  // 1/lambda homogeneity before clipping; lambda large enough that nothing clips.
  const FrequencyInterval a = morlet_support(2.0, m, eps);
  const FrequencyInterval b = morlet_support(4.0, m, eps);
  CHECK(b.lo == doctest::Approx(a.lo / 2.0).epsilon(1e-14));
  CHECK(b.hi == doctest::Approx(a.hi / 2.0).epsilon(1e-14));

  // 2 sigma0 sqrt(2 ln 1e4) with sigma0 from q=16.
  const FrequencyInterval w = morlet_support(1.0, mother_params(16), 1e-4);
  CHECK(w.lo > 0.0);
  const double unclipped = 2.0 * 0.07343327190430643 * std::sqrt(2.0 * std::log(1e4));
  CHECK(unclipped == doctest::Approx(0.6303412268236386).epsilon(1e-12));
  CHECK(w.hi == kPi);  // the top filter is clipped at pi
  CHECK(morlet_support(2.0, mother_params(16), 1e-4).width() ==
        doctest::Approx(unclipped / 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(morlet_support(1.0, m, 0.0), ParameterError);
  CHECK_THROWS_AS(morlet_support(1.0, m, 1.0), ParameterError);
  CHECK_THROWS_AS(morlet_support(0.5, m, 0.1), ParameterError);
}

TEST_CASE("sample_morlet: peak, admissibility and threshold against dense evaluation") {
  for (int q : {1, 4, 16}) {
    const MotherParams m = mother_params(q);
    for (double lambda : {1.0, 1.5, 8.0, 100.0}) {
      for (double eps : {1e-2, 1e-4, 1e-7}) {
        const std::size_t n = 4096;
        const FourierFilter f = sample_morlet(lambda, m, eps, n);
        CHECK(f.n == n);
        CHECK(f.at(0) == 0.0);
        CHECK(!f.support.contains(0));
        check_against_dense(f, lambda, m, eps);

        const double center = m.mu0 / lambda;
        const auto nearest = static_cast<std::size_t>(std::lround(center * n / (2.0 * kPi)));
        const double width = m.sigma0 / lambda;
        const double floor = std::exp(-std::pow(kPi / n, 2) / (2.0 * width * width));
        if (nearest <= n / 2) CHECK(f.at(nearest) >= floor - 1e-15);
      }
    }
  }
}

TEST_CASE("sample_morlet: a filter narrower than a bin may be empty") {
  const FourierFilter f = sample_morlet(512.0, mother_params(16), 0.5, 64);
  CHECK(f.support.empty());
  CHECK(f.values.empty());
}

TEST_CASE("sample_gaussian_scaling: infinite width is the global average") {
  const FourierFilter f = sample_gaussian_scaling(kInfiniteTimeSupport, 1e-4, 256);
  CHECK(f.support == BinRange::closed(0, 0));
  CHECK(f.values == std::vector<double>{1.0});
  CHECK(!f.lambda.has_value());
}

TEST_CASE("sample_gaussian_scaling: finite width") {
  const FrequencyInterval s = gaussian_support(ScalingWidth::finite(kPi), std::exp(-0.5));
  CHECK(s.lo == 0.0);
  CHECK(s.hi == doctest::Approx(kPi).epsilon(1e-12));

  for (double sigma : {0.01, 0.1, 1.0}) {
    const std::size_t n = 2048;
    const double eps = 1e-5;
    const FourierFilter f = sample_gaussian_scaling(ScalingWidth::finite(sigma), eps, n);
    CHECK(f.at(0) == 1.0);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      const double w = omega(k, n);
      const double dense = std::exp(-w * w / (2.0 * sigma * sigma));
      if (f.support.contains(k)) {
        CHECK(std::abs(f.at(k) - dense) <= 1e-15);
        CHECK(f.at(k) > eps);
      } else {
        CHECK(dense <= eps);
      }
    }
  }

  CHECK_THROWS_AS(ScalingWidth::finite(0.0), ParameterError);
  CHECK_THROWS_AS(ScalingWidth::finite(-1.0), ParameterError);
}

TEST_CASE("generate_filterbank: structure") {
  const FilterBank bank = generate_filterbank(1 << 12, 4, 4, 1e-4, false);
  CHECK(bank.filters.size() == 17);
  CHECK(bank.scales.size() == 17);
  CHECK(!bank.normalized);
  CHECK(bank.scaling.support == BinRange::closed(0, 0));
  for (std::size_t i = 0; i < bank.filters.size(); ++i) {
    CHECK(bank.filters[i].lambda.value() == bank.scales[i]);
    CHECK(bank.filters[i].at(0) == 0.0);
  }
  // Centers move strictly down as lambda grows.
  auto center_bin = [](const FourierFilter& f) {
    std::size_t best = f.support.lo();
    for (std::size_t k = f.support.lo(); k <= f.support.hi(); ++k)
      if (f.at(k) > f.at(best)) best = k;
    return best;
  };
  for (std::size_t i = 1; i < bank.filters.size(); ++i)
    CHECK(center_bin(bank.filters[i]) < center_bin(bank.filters[i - 1]));

  CHECK_THROWS_AS(generate_filterbank(1000, 4, 4, 1e-4, false), LengthError);
  CHECK_THROWS_AS(generate_filterbank(1024, 0, 4, 1e-4, false), ParameterError);
  CHECK_THROWS_AS(generate_filterbank(1024, 4, 4, 2.0, false), ParameterError);
}

TEST_CASE("generate_filterbank: sparsity is stable in n and falls with epsilon") {
  const double a = generate_filterbank(1 << 17, 16, 9, 1e-4, false).sparsity_percent();
  const double b = generate_filterbank(1 << 18, 16, 9, 1e-4, false).sparsity_percent();
  CHECK(std::abs(a - b) < 1e-3);

  double prev = 100.0;
  for (double eps : {1e-2, 1e-4, 1e-7, 1e-10}) {
    const double s = generate_filterbank(1 << 16, 16, 9, eps, false).sparsity_percent();
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("renormalize_littlewood_paley: single filter becomes one on its support") {
  FilterBank bank = generate_filterbank(1024, 1, 1, 1e-3, false);
  bank.filters.resize(1);
  bank.scales.resize(1);
  const FilterBank norm = renormalize_littlewood_paley(bank);
  CHECK(norm.normalized);
  for (double v : norm.filters[0].values) CHECK(v == 1.0);
}

TEST_CASE("renormalize_littlewood_paley: partition of unity on the covered band") {
  const FilterBank raw = generate_filterbank(1 << 12, 4, 4, 1e-4, false);
  const std::vector<double> before = bank_sum(raw);
  const FilterBank bank = renormalize_littlewood_paley(raw);
  const std::vector<double> after = bank_sum(bank);

  std::size_t covered = 0;
  for (std::size_t k = 0; k < after.size(); ++k) {
    if (before[k] > kCoveredBandFloor) {
      ++covered;
      CHECK(std::abs(after[k] - 1.0) < 1e-9);
    } else {
      CHECK(after[k] == before[k]);
    }
  }
  CHECK(covered > 1000);

  // A second pass divides by one.
  const FilterBank twice = renormalize_littlewood_paley(bank);
  for (std::size_t i = 0; i < bank.filters.size(); ++i)
    for (std::size_t k = 0; k < bank.filters[i].values.size(); ++k)
      CHECK(std::abs(twice.filters[i].values[k] - bank.filters[i].values[k]) < 1e-12);
}

TEST_CASE("renormalized bank reconstructs band-limited spectra") {
  const std::size_t n = 1 << 12;
  const FilterBank bank = generate_filterbank(n, 4, 4, 1e-4, true);
  const std::vector<double> total = bank_sum(generate_filterbank(n, 4, 4, 1e-4, false));
  std::size_t lo = 0, hi = 0;
  for (std::size_t k = 0; k < total.size(); ++k)
    if (total[k] > kCoveredBandFloor) {
      if (lo == 0) lo = k;
      hi = k;
    }
  const auto values = random_complex(hi - lo + 1, 17);
  const HalfSpectrum x(n, BinRange::closed(lo, hi), values);
  const HalfSpectrum y = reconstruct_band(x, bank);
  for (std::size_t k = lo; k <= hi; ++k) CHECK(std::abs(y.at(k) - x.at(k)) < 1e-9 * std::abs(x.at(k)) + 1e-15);
}
