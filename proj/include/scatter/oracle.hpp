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

// Naive time-domain scattering used as a test oracle. Filters are evaluated
// densely on every bin with no threshold, every node is materialized in time,
// and S and V are computed as a plain mean and sum of squared deviations.
// Nothing here reads support metadata. Not for production use.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scatter/fourier.hpp"
#include "scatter/scattering.hpp"

namespace scatter::oracle {

struct DenseFilter {
  std::vector<double> values;  // bins 0..n/2
  double lambda = 1.0;
};

/// Untruncated Morlet bank for signals of length n, renormalized to a
/// partition of unity wherever the bank sum exceeds 1e-6.
std::vector<DenseFilter> dense_bank(std::size_t n, int q, int j);

/// Circular convolution with a single-sided filter; the output is analytic.
std::vector<cplx> oracle_convolve(std::span<const cplx> x, const DenseFilter& f);

/// Time-domain impulse response of a single-sided filter (length n).
std::vector<cplx> impulse_response(const DenseFilter& f, std::size_t n);

FeatureVector oracle_scatter(std::span<const double> x, const ScatterConfig& config);

/// Per-layer sum over nodes of sum_t X(t)^2, layer 0 first.
std::vector<double> oracle_layer_energy(std::span<const double> x, const ScatterConfig& config);

}  // namespace scatter::oracle
