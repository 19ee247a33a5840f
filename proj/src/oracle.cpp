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

#include "scatter/oracle.hpp"

#include <cmath>
#include <numbers>

namespace scatter::oracle {

namespace {

struct Node {
  ScatterPath path;
  std::vector<double> signal;
};

std::vector<std::vector<Node>> build_layers(std::span<const double> x,
                                            const ScatterConfig& config) {
  config.validate();
  const std::size_t n = x.size();
  std::vector<std::vector<Node>> layers;
  layers.push_back({Node{{}, std::vector<double>(x.begin(), x.end())}});

  for (const auto& params : config.layers) {
    const std::vector<DenseFilter> bank = dense_bank(n, params.q, params.j);
    std::vector<Node> next;
    for (const Node& parent : layers.back()) {
      const std::vector<cplx> input(parent.signal.begin(), parent.signal.end());
      for (std::size_t i = 0; i < bank.size(); ++i) {
        const std::vector<cplx> y = oracle_convolve(input, bank[i]);
        std::vector<double> squared(n);
        for (std::size_t t = 0; t < n; ++t) squared[t] = std::norm(y[t]);
        next.push_back({parent.path.child(i), std::move(squared)});
      }
    }
    layers.push_back(std::move(next));
  }
  return layers;
}

}  // namespace

std::vector<DenseFilter> dense_bank(std::size_t n, int q, int j) {
  const double pi = std::numbers::pi;
  const double r = std::pow(2.0, -1.0 / q);
  const double mu0 = pi / 2.0 * (r + 1.0);
  const double sigma0 = std::sqrt(3.0) * (1.0 - r);
  const std::size_t half = n / 2;

  std::vector<DenseFilter> bank;
  for (int i = 0; i <= j * q; ++i) {
    DenseFilter f;
    f.lambda = std::pow(2.0, static_cast<double>(i) / q);
    f.values.assign(half + 1, 0.0);
    for (std::size_t k = 1; k <= half; ++k) {
      const double w = 2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
      const double c = mu0 / f.lambda;
      const double s = sigma0 / f.lambda;
      f.values[k] = std::exp(-(w - c) * (w - c) / (2.0 * s * s));
    }
    bank.push_back(std::move(f));
  }

  for (std::size_t k = 0; k <= half; ++k) {
    double total = 0.0;
    for (const auto& f : bank) total += f.values[k];
    if (total > 1e-6)
      for (auto& f : bank) f.values[k] /= total;
  }
  return bank;
}

std::vector<cplx> oracle_convolve(std::span<const cplx> x, const DenseFilter& f) {
  const std::size_t n = x.size();
  if (f.values.size() != n / 2 + 1) throw ShapeError("oracle_convolve: filter length mismatch");
  const DenseSpectrum spectrum = fft(x);
  std::vector<cplx> product(n);
  for (std::size_t k = 0; k <= n / 2; ++k) product[k] = spectrum[k] * f.values[k];
  return ifft(DenseSpectrum(std::move(product)));
}

std::vector<cplx> impulse_response(const DenseFilter& f, std::size_t n) {
  std::vector<cplx> spectrum(n);
  for (std::size_t k = 0; k <= n / 2; ++k) spectrum[k] = f.values[k];
  return ifft(DenseSpectrum(std::move(spectrum)));
}

FeatureVector oracle_scatter(std::span<const double> x, const ScatterConfig& config) {
  FeatureVector out;
  for (const auto& layer : build_layers(x, config)) {
    for (const Node& node : layer) {
      double mean = 0.0;
      for (double v : node.signal) mean += v;
      mean /= static_cast<double>(node.signal.size());
      double dispersion = 0.0;
      for (double v : node.signal) dispersion += (v - mean) * (v - mean);
      out.entries.push_back({node.path, mean, dispersion});
    }
  }
  return out;
}

std::vector<double> oracle_layer_energy(std::span<const double> x, const ScatterConfig& config) {
  std::vector<double> energy;
  for (const auto& layer : build_layers(x, config)) {
    double total = 0.0;
    for (const Node& node : layer)
      for (double v : node.signal) total += v * v;
    energy.push_back(total);
  }
  return energy;
}

}  // namespace scatter::oracle
