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

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scatter/filterbank.hpp"
#include "scatter/fourier.hpp"

namespace scatter {

/// Scale indices (i1, ..., il), one per layer, into each layer's scale set.
/// The empty path is layer 0, the input itself.
struct ScatterPath {
  std::vector<std::size_t> indices;

  std::size_t depth() const { return indices.size(); }
  ScatterPath child(std::size_t index) const;

  friend auto operator<=>(const ScatterPath&, const ScatterPath&) = default;
  friend bool operator==(const ScatterPath&, const ScatterPath&) = default;
};

/// Spectra of every node of one layer, in lexicographic path order.
struct LayerRepresentation {
  std::size_t depth = 0;
  std::vector<std::pair<ScatterPath, HalfSpectrum>> nodes;

  std::size_t nonzeros() const;
};

struct LayerParams {
  int q = 1;
  int j = 1;
  ScalingWidth scaling = kInfiniteTimeSupport;
};

struct ScatterConfig {
  std::vector<LayerParams> layers;  // one entry per layer, depth = size
  double epsilon = 1e-4;
  // Children of an empty-support parent are all zero; skip computing them.
  bool skip_empty_parents = true;
  // Worker threads for forward_layer. Output does not depend on this.
  unsigned workers = 1;

  std::size_t depth() const { return layers.size(); }
  void validate() const;
};

struct FeatureEntry {
  ScatterPath path;
  double s = 0.0;
  double v = 0.0;
};

/// Ordered by layer, then lexicographically by scale indices.
struct FeatureVector {
  std::vector<FeatureEntry> entries;
};

struct LayerTelemetry {
  std::size_t nodes = 0;
  std::size_t nonzeros = 0;   // stored half-spectrum bins across all nodes
  double sparsity_percent = 0.0;  // relative to nodes * (n/2 + 1)
  double energy = 0.0;        // sum over nodes of sum_t X(t)^2
  double seconds = 0.0;
  // Sum of this layer's V over the sum of S in every deeper layer. An exact
  // energy partition would make it 1; truncated banks do not, so it is only
  // reported. Empty for the last layer or when the deeper S sum is zero.
  std::optional<double> partition_ratio;
};

struct ScatterResult {
  FeatureVector features;
  std::vector<LayerTelemetry> layers;  // index 0 is the input layer
};

/// |c|^2.
inline double quadratic_pointwise(cplx c) { return c.real() * c.real() + c.imag() * c.imag(); }

/// Half spectrum of |y|^2 where y is the analytic signal whose spectrum is
/// exactly the stored bins of h. Runs in O(m log m) for a support of m bins.
HalfSpectrum spectral_square(const HalfSpectrum& h);

LayerRepresentation input_layer(std::span<const double> x);

LayerRepresentation forward_layer(const LayerRepresentation& prev, const FilterBank& bank,
                                  unsigned workers = 1, bool skip_empty_parents = true);

/// Global time average of the node: bin 0 divided by n.
double extract_scattering(const HalfSpectrum& node);

/// Smoothed node, ifft(expand(node * phi)), for a finite-width scaling
/// filter. With the global (bin 0) filter this is the constant mean.
std::vector<double> extract_scattering(const HalfSpectrum& node, const FourierFilter& scaling);

/// Sum over t of (X(t) - (X * phi)(t))^2, evaluated in the frequency domain.
/// With the global filter this masks only the DC bin.
double extract_dispersion(const HalfSpectrum& node, const FourierFilter& scaling);
double extract_dispersion(const HalfSpectrum& node);

/// sum_t X(t)^2 of the real signal whose half spectrum is node.
double node_energy(const HalfSpectrum& node);

/// banks[l] is the filter bank of layer l + 1 and must be normalized.
ScatterResult scatter_detailed(std::span<const double> x, std::span<const FilterBank> banks,
                               const ScatterConfig& config);
FeatureVector scatter(std::span<const double> x, std::span<const FilterBank> banks,
                      const ScatterConfig& config);

/// Builds one normalized bank per layer for signals of length n.
std::vector<FilterBank> make_banks(std::size_t n, const ScatterConfig& config);

/// Sum of x_hat filtered by every band-pass filter of a normalized bank.
HalfSpectrum reconstruct_band(const HalfSpectrum& x_hat, const FilterBank& bank);

/// Number of entries a FeatureVector has for this configuration.
std::size_t feature_count(const ScatterConfig& config);

}  // namespace scatter
