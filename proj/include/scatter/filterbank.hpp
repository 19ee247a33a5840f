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

#include <cstddef>
#include <limits>
#include <vector>

#include "scatter/fourier.hpp"

namespace scatter {

/// Morlet mother wavelet in the Fourier domain:
///   psi(w) = H(w) exp(-(w - mu0)^2 / (2 sigma0^2)),
/// with mu0 = (pi/2)(2^(-1/Q) + 1) and sigma0 = sqrt(3)(1 - 2^(-1/Q)).
/// A filter at scale lambda is the same bump with center mu0/lambda and
/// width sigma0/lambda.
struct MotherParams {
  double mu0 = 0.0;
  double sigma0 = 0.0;
  int q = 0;
};

/// Continuous frequency interval in radians/sample.
struct FrequencyInterval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Frequency-domain width of the Gaussian scaling filter. The default value
/// is the infinite time support, i.e. the global average (bin 0 only).
class ScalingWidth {
 public:
  constexpr ScalingWidth() = default;
  static ScalingWidth finite(double sigma);
  static constexpr ScalingWidth infinite() { return {}; }

  bool is_infinite() const { return sigma_ == std::numeric_limits<double>::infinity(); }
  double sigma() const { return sigma_; }

  friend bool operator==(const ScalingWidth&, const ScalingWidth&) = default;

 private:
  explicit constexpr ScalingWidth(double sigma) : sigma_(sigma) {}
  double sigma_ = std::numeric_limits<double>::infinity();
};

inline constexpr ScalingWidth kInfiniteTimeSupport = ScalingWidth::infinite();

struct FilterBank {
  std::size_t n = 0;
  int q = 0;
  int j = 0;
  double epsilon = 0.0;
  bool normalized = false;
  std::vector<double> scales;          // ascending lambda
  std::vector<FourierFilter> filters;  // one per scale, same order
  FourierFilter scaling;

  /// Stored band-pass bins, excluding the scaling filter.
  std::size_t nonzeros() const;
  /// Percentage of zero entries when each band-pass filter is viewed as a
  /// dense length-n frequency response.
  double sparsity_percent() const;
};

/// {2^(i/Q) : i = 0..J*Q}, ascending.
std::vector<double> build_scale_set(int q, int j);

MotherParams mother_params(int q);

/// [mu0/lambda -/+ (sigma0/lambda) sqrt(-2 ln eps)], clipped to [0, pi].
FrequencyInterval morlet_support(double lambda, const MotherParams& mother, double epsilon);

/// Morlet response at frequency omega for the given scale (no truncation).
double morlet_response(double omega, double lambda, const MotherParams& mother);

FourierFilter sample_morlet(double lambda, const MotherParams& mother, double epsilon,
                            std::size_t n);

/// [0, sigma sqrt(-2 ln eps)], clipped to [0, pi]. Requires a finite width.
FrequencyInterval gaussian_support(ScalingWidth width, double epsilon);

FourierFilter sample_gaussian_scaling(ScalingWidth width, double epsilon, std::size_t n);

FilterBank generate_filterbank(std::size_t n, int q, int j, double epsilon, bool normalize,
                               ScalingWidth scaling = kInfiniteTimeSupport);

/// Bins whose bank sum exceeds this are part of the covered band.
inline constexpr double kCoveredBandFloor = 1e-6;

/// Divides every filter pointwise by the bank sum on the covered band so
/// that the filters form a partition of unity there. Idempotent.
FilterBank renormalize_littlewood_paley(FilterBank bank);

/// Dense sum of all band-pass responses over bins 0..n/2.
std::vector<double> bank_sum(const FilterBank& bank);

}  // namespace scatter
