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

#include "scatter/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace scatter {

namespace {

constexpr double kPi = std::numbers::pi;

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ParameterError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
}

void check_counts(int q, int j) {
  if (q < 1) throw ParameterError("q must be >= 1");
  if (j < 1) throw ParameterError("j must be >= 1");
}

double bin_frequency(std::size_t k, std::size_t n) {
  return 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
}

// Maps a continuous interval onto the bins whose response exceeds epsilon.
// The ceil/floor guess is corrected by a few steps on each side, since the
// response equals epsilon at the interval edges and rounding may go either way.
template <typename Response>
BinRange threshold_bins(const FrequencyInterval& band, std::size_t n, double epsilon,
                        Response response) {
  const std::size_t half = n / 2;
  const double scale = static_cast<double>(n) / (2.0 * kPi);
  const double lo_f = std::ceil(band.lo * scale);
  const double hi_f = std::floor(band.hi * scale);
  if (hi_f < 0.0 || lo_f > static_cast<double>(half)) return BinRange::none();

  std::size_t lo = static_cast<std::size_t>(std::max(lo_f, 0.0));
  std::size_t hi = static_cast<std::size_t>(std::min(hi_f, static_cast<double>(half)));
  if (lo > hi) {
    // Narrower than one bin: only a bin right at the edge can qualify.
    if (lo <= half && response(lo) > epsilon) return BinRange::closed(lo, lo);
    if (hi <= half && response(hi) > epsilon) return BinRange::closed(hi, hi);
    return BinRange::none();
  }

  while (lo <= hi && response(lo) <= epsilon) ++lo;
  while (hi >= lo && hi > 0 && response(hi) <= epsilon) --hi;
  if (lo > hi || response(lo) <= epsilon) return BinRange::none();
  while (lo > 0 && response(lo - 1) > epsilon) --lo;
  while (hi < half && response(hi + 1) > epsilon) ++hi;
  return BinRange::closed(lo, hi);
}

}  // namespace

ScalingWidth ScalingWidth::finite(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ParameterError("scaling width must be positive and finite");
  return ScalingWidth(sigma);
}

std::size_t FilterBank::nonzeros() const {
  std::size_t total = 0;
  for (const auto& f : filters) total += f.support.size();
  return total;
}

double FilterBank::sparsity_percent() const {
  const double dense = static_cast<double>(filters.size()) * static_cast<double>(n);
  if (dense == 0.0) return 100.0;
  return 100.0 * (1.0 - static_cast<double>(nonzeros()) / dense);
}

std::vector<double> build_scale_set(int q, int j) {
  check_counts(q, j);
  std::vector<double> scales(static_cast<std::size_t>(j * q + 1));
  for (int i = 0; i <= j * q; ++i)
    scales[static_cast<std::size_t>(i)] = std::exp2(static_cast<double>(i) / q);
  return scales;
}

MotherParams mother_params(int q) {
  if (q < 1) throw ParameterError("q must be >= 1");
  const double r = std::exp2(-1.0 / q);
  return {kPi / 2.0 * (r + 1.0), std::sqrt(3.0) * (1.0 - r), q};
}

FrequencyInterval morlet_support(double lambda, const MotherParams& mother, double epsilon) {
  check_epsilon(epsilon);
  if (!(lambda >= 1.0)) throw ParameterError("lambda must be >= 1");
  const double center = mother.mu0 / lambda;
  const double reach = mother.sigma0 / lambda * std::sqrt(-2.0 * std::log(epsilon));
  return {std::clamp(center - reach, 0.0, kPi), std::clamp(center + reach, 0.0, kPi)};
}

double morlet_response(double omega, double lambda, const MotherParams& mother) {
  if (omega <= 0.0) return 0.0;
  const double center = mother.mu0 / lambda;
  const double width = mother.sigma0 / lambda;
  const double d = omega - center;
  return std::exp(-d * d / (2.0 * width * width));
}

FourierFilter sample_morlet(double lambda, const MotherParams& mother, double epsilon,
                            std::size_t n) {
  if (!is_pow2(n) || n < 2) throw LengthError("sample_morlet: n must be a power of two");
  const FrequencyInterval band = morlet_support(lambda, mother, epsilon);
  auto response = [&](std::size_t k) {
    return morlet_response(bin_frequency(k, n), lambda, mother);
  };

  FourierFilter f;
  f.n = n;
  f.lambda = lambda;
  f.support = threshold_bins(band, n, epsilon, response);
  f.values.reserve(f.support.size());
  for (std::size_t i = 0; i < f.support.size(); ++i)
    f.values.push_back(response(f.support.lo() + i));
  return f;
}

FrequencyInterval gaussian_support(ScalingWidth width, double epsilon) {
  check_epsilon(epsilon);
  if (width.is_infinite()) return {0.0, 0.0};
  return {0.0, std::min(width.sigma() * std::sqrt(-2.0 * std::log(epsilon)), kPi)};
}

FourierFilter sample_gaussian_scaling(ScalingWidth width, double epsilon, std::size_t n) {
  check_epsilon(epsilon);
  if (!is_pow2(n) || n < 2)
    throw LengthError("sample_gaussian_scaling: n must be a power of two");

  FourierFilter f;
  f.n = n;
  if (width.is_infinite()) {
    f.support = BinRange::closed(0, 0);
    f.values = {1.0};
    return f;
  }

  const double sigma = width.sigma();
  auto response = [&](std::size_t k) {
    const double w = bin_frequency(k, n);
    return std::exp(-w * w / (2.0 * sigma * sigma));
  };
  f.support = threshold_bins(gaussian_support(width, epsilon), n, epsilon, response);
  f.values.reserve(f.support.size());
  for (std::size_t i = 0; i < f.support.size(); ++i)
    f.values.push_back(response(f.support.lo() + i));
  return f;
}

FilterBank generate_filterbank(std::size_t n, int q, int j, double epsilon, bool normalize,
                               ScalingWidth scaling) {
  if (!is_pow2(n) || n < 2) throw LengthError("generate_filterbank: n must be a power of two");
  check_epsilon(epsilon);

  FilterBank bank;
  bank.n = n;
  bank.q = q;
  bank.j = j;
  bank.epsilon = epsilon;
  bank.scales = build_scale_set(q, j);
  const MotherParams mother = mother_params(q);
  bank.filters.reserve(bank.scales.size());
  for (double lambda : bank.scales)
    bank.filters.push_back(sample_morlet(lambda, mother, epsilon, n));
  bank.scaling = sample_gaussian_scaling(scaling, epsilon, n);

  if (normalize) return renormalize_littlewood_paley(std::move(bank));
  return bank;
}

std::vector<double> bank_sum(const FilterBank& bank) {
  std::vector<double> total(bank.n / 2 + 1, 0.0);
  for (const auto& f : bank.filters)
    for (std::size_t i = 0; i < f.values.size(); ++i) total[f.support.lo() + i] += f.values[i];
  return total;
}

FilterBank renormalize_littlewood_paley(FilterBank bank) {
  const std::vector<double> total = bank_sum(bank);
  for (auto& f : bank.filters) {
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double t = total[f.support.lo() + i];
      if (t > kCoveredBandFloor) f.values[i] /= t;
    }
  }
  bank.normalized = true;
  return bank;
}

}  // namespace scatter
