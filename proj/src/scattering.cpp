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

#include "scatter/scattering.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <thread>

namespace scatter {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Weight of bin k in a sum over the full conjugate-symmetric spectrum.
double mirror_weight(std::size_t k, std::size_t half) {
  return (k == 0 || k == half) ? 1.0 : 2.0;
}

LayerTelemetry describe(const LayerRepresentation& layer, std::size_t n, double seconds) {
  LayerTelemetry t;
  t.nodes = layer.nodes.size();
  t.nonzeros = layer.nonzeros();
  const double dense = static_cast<double>(t.nodes) * static_cast<double>(n / 2 + 1);
  t.sparsity_percent = dense > 0.0 ? 100.0 * (1.0 - static_cast<double>(t.nonzeros) / dense) : 100.0;
  for (const auto& [path, spectrum] : layer.nodes) t.energy += node_energy(spectrum);
  t.seconds = seconds;
  return t;
}

}  // namespace

ScatterPath ScatterPath::child(std::size_t index) const {
  ScatterPath p{indices};
  p.indices.push_back(index);
  return p;
}

std::size_t LayerRepresentation::nonzeros() const {
  std::size_t total = 0;
  for (const auto& [path, spectrum] : nodes) total += spectrum.support().size();
  return total;
}

void ScatterConfig::validate() const {
  if (layers.empty()) throw ParameterError("scatter: at least one layer is required");
  for (const auto& l : layers)
    if (l.q < 1 || l.j < 1) throw ParameterError("scatter: q and j must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("scatter: epsilon must be in (0, 1)");
}

HalfSpectrum spectral_square(const HalfSpectrum& h) {
  const std::size_t n = h.n();
  const std::size_t half = n / 2;
  if (h.support().empty()) return HalfSpectrum::zeros(n);

  const std::size_t m = h.support().size();
  const std::vector<cplx> r = padded_autocorrelation(h.values());

  // Bin k of |y|^2 collects lag k and, through the circular wrap, lag k - n.
  // The wrap only reaches bin n/2, and only for a support spanning all bins.
  const std::size_t top = std::min(m - 1, half);
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<cplx> out(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    cplx v = r[k];
    if (k > 0 && n - k < m) v += std::conj(r[n - k]);
    out[k] = v * scale;
  }
  out[0] = {out[0].real(), 0.0};
  if (top == half) out[half] = {out[half].real(), 0.0};
  return {n, BinRange::closed(0, top), std::move(out)};
}

LayerRepresentation input_layer(std::span<const double> x) {
  LayerRepresentation layer;
  layer.depth = 0;
  layer.nodes.emplace_back(ScatterPath{}, HalfSpectrum::from_dense(fft(x)));
  return layer;
}

LayerRepresentation forward_layer(const LayerRepresentation& prev, const FilterBank& bank,
                                  unsigned workers, bool skip_empty_parents) {
  if (!bank.normalized) throw PreconditionError("forward_layer: filter bank is not normalized");
  for (const auto& [path, spectrum] : prev.nodes)
    if (spectrum.n() != bank.n)
      throw ShapeError("forward_layer: spectrum length " + std::to_string(spectrum.n()) +
                       " vs bank length " + std::to_string(bank.n));

  const std::size_t width = bank.filters.size();
  const std::size_t total = prev.nodes.size() * width;

  LayerRepresentation next;
  next.depth = prev.depth + 1;
  next.nodes.reserve(total);
  for (const auto& [path, spectrum] : prev.nodes)
    for (std::size_t i = 0; i < width; ++i)
      next.nodes.emplace_back(path.child(i), HalfSpectrum::zeros(bank.n));

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const HalfSpectrum& parent = prev.nodes[t / width].second;
      if (skip_empty_parents && parent.support().empty()) continue;
      next.nodes[t].second = spectral_square(hadamard_on_support(parent, bank.filters[t % width]));
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(total, 1));
  if (threads == 1) {
    run(0, total);
    return next;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (total + threads - 1) / threads;
  for (std::size_t w = 0; w < threads; ++w) {
    const std::size_t begin = std::min(total, w * chunk);
    const std::size_t end = std::min(total, begin + chunk);
    pool.emplace_back(run, begin, end);
  }
  return next;
}

double extract_scattering(const HalfSpectrum& node) {
  return node.at(0).real() / static_cast<double>(node.n());
}

std::vector<double> extract_scattering(const HalfSpectrum& node, const FourierFilter& scaling) {
  const std::vector<cplx> smoothed =
      ifft(expand_half_spectrum(hadamard_on_support(node, scaling)));
  std::vector<double> out(smoothed.size());
  std::transform(smoothed.begin(), smoothed.end(), out.begin(), [](cplx c) { return c.real(); });
  return out;
}

double extract_dispersion(const HalfSpectrum& node, const FourierFilter& scaling) {
  if (node.n() != scaling.n) throw ShapeError("extract_dispersion: length mismatch");
  const std::size_t half = node.half();
  double sum = 0.0;
  if (!node.support().empty()) {
    for (std::size_t k = node.support().lo(); k <= node.support().hi(); ++k) {
      const double mask = 1.0 - scaling.at(k);
      sum += mirror_weight(k, half) * quadratic_pointwise(node.at(k) * mask);
    }
  }
  return sum / static_cast<double>(node.n());
}

double extract_dispersion(const HalfSpectrum& node) {
  const std::size_t half = node.half();
  double sum = 0.0;
  if (!node.support().empty()) {
    for (std::size_t k = std::max<std::size_t>(node.support().lo(), 1); k <= node.support().hi(); ++k)
      sum += mirror_weight(k, half) * quadratic_pointwise(node.at(k));
  }
  return sum / static_cast<double>(node.n());
}

double node_energy(const HalfSpectrum& node) {
  const std::size_t half = node.half();
  double sum = 0.0;
  if (!node.support().empty())
    for (std::size_t k = node.support().lo(); k <= node.support().hi(); ++k)
      sum += mirror_weight(k, half) * quadratic_pointwise(node.at(k));
  return sum / static_cast<double>(node.n());
}

ScatterResult scatter_detailed(std::span<const double> x, std::span<const FilterBank> banks,
                               const ScatterConfig& config) {
  config.validate();
  if (banks.size() != config.depth())
    throw ShapeError("scatter: expected " + std::to_string(config.depth()) + " filter banks, got " +
                     std::to_string(banks.size()));
  for (std::size_t l = 0; l < banks.size(); ++l) {
    if (banks[l].n != x.size())
      throw ShapeError("scatter: bank " + std::to_string(l + 1) + " was sampled for n=" +
                       std::to_string(banks[l].n) + ", signal has n=" + std::to_string(x.size()));
    if (banks[l].q != config.layers[l].q || banks[l].j != config.layers[l].j)
      throw ParameterError("scatter: bank " + std::to_string(l + 1) + " does not match config");
  }

  ScatterResult result;
  auto start = Clock::now();
  LayerRepresentation layer = input_layer(x);
  result.layers.push_back(describe(layer, x.size(), seconds_since(start)));

  auto emit = [&](const LayerRepresentation& rep) {
    for (const auto& [path, spectrum] : rep.nodes)
      result.features.entries.push_back(
          {path, extract_scattering(spectrum), extract_dispersion(spectrum)});
  };
  emit(layer);

  for (const FilterBank& bank : banks) {
    start = Clock::now();
    layer = forward_layer(layer, bank, config.workers, config.skip_empty_parents);
    result.layers.push_back(describe(layer, x.size(), seconds_since(start)));
    emit(layer);
  }

  std::vector<double> s_total(result.layers.size(), 0.0), v_total(result.layers.size(), 0.0);
  for (const auto& e : result.features.entries) {
    s_total[e.path.depth()] += e.s;
    v_total[e.path.depth()] += e.v;
  }
  double deeper = 0.0;
  for (std::size_t l = result.layers.size(); l-- > 0;) {
    if (deeper > 0.0) result.layers[l].partition_ratio = v_total[l] / deeper;
    deeper += s_total[l];
  }
  return result;
}

FeatureVector scatter(std::span<const double> x, std::span<const FilterBank> banks,
                      const ScatterConfig& config) {
  return scatter_detailed(x, banks, config).features;
}

std::vector<FilterBank> make_banks(std::size_t n, const ScatterConfig& config) {
  config.validate();
  std::vector<FilterBank> banks;
  banks.reserve(config.depth());
  for (const auto& l : config.layers)
    banks.push_back(generate_filterbank(n, l.q, l.j, config.epsilon, true, l.scaling));
  return banks;
}

HalfSpectrum reconstruct_band(const HalfSpectrum& x_hat, const FilterBank& bank) {
  if (!bank.normalized) throw PreconditionError("reconstruct_band: filter bank is not normalized");
  const std::size_t half = x_hat.half();
  std::vector<cplx> sum(half + 1);
  std::size_t lo = half + 1;
  std::size_t hi = 0;
  for (const auto& f : bank.filters) {
    const HalfSpectrum part = hadamard_on_support(x_hat, f);
    if (part.support().empty()) continue;
    lo = std::min(lo, part.support().lo());
    hi = std::max(hi, part.support().hi());
    for (std::size_t k = part.support().lo(); k <= part.support().hi(); ++k) sum[k] += part.at(k);
  }
  if (lo > hi) return HalfSpectrum::zeros(x_hat.n());
  return {x_hat.n(), BinRange::closed(lo, hi),
          std::vector<cplx>(sum.begin() + static_cast<std::ptrdiff_t>(lo),
                            sum.begin() + static_cast<std::ptrdiff_t>(hi) + 1)};
}

std::size_t feature_count(const ScatterConfig& config) {
  std::size_t total = 1;
  std::size_t nodes = 1;
  for (const auto& l : config.layers) {
    nodes *= static_cast<std::size_t>(l.j * l.q + 1);
    total += nodes;
  }
  return total;
}

}  // namespace scatter
