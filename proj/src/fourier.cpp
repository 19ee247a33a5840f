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

#include "scatter/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace scatter {

namespace {

constexpr double kRealnessTolerance = 1e-9;

void require_pow2(std::size_t n, const char* what) {
  if (!is_pow2(n) || n < 2)
    throw LengthError(std::string(what) + ": length " + std::to_string(n) +
                      " is not a power of two >= 2");
}

// In-place iterative radix-2 decimation in time. Twiddles are evaluated
// directly (no recurrence) to keep the error at the level of a direct DFT.
void transform(std::vector<cplx>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  std::vector<cplx> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx t = twiddle[k * stride] * a[start + k + half];
        const cplx u = a[start + k];
        a[start + k] = u + t;
        a[start + k + half] = u - t;
      }
    }
  }
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

BinRange BinRange::intersect(const BinRange& other) const {
  if (empty() || other.empty()) return {};
  const std::size_t lo = std::max(lo_, other.lo_);
  const std::size_t hi = std::min(this->hi(), other.hi());
  return closed(lo, hi);
}

DenseSpectrum::DenseSpectrum(std::vector<cplx> values) : values_(std::move(values)) {
  require_pow2(values_.size(), "DenseSpectrum");
}

HalfSpectrum::HalfSpectrum(std::size_t n, BinRange support, std::vector<cplx> values)
    : n_(n), support_(support), values_(std::move(values)) {
  require_pow2(n_, "HalfSpectrum");
  if (!support_.empty() && support_.hi() > n_ / 2)
    throw ShapeError("HalfSpectrum: support exceeds bin n/2");
  if (values_.size() != support_.size())
    throw ShapeError("HalfSpectrum: value count does not match support width");
}

HalfSpectrum HalfSpectrum::zeros(std::size_t n) { return {n, BinRange::none(), {}}; }

HalfSpectrum HalfSpectrum::from_dense(const DenseSpectrum& full) {
  const std::size_t half = full.n() / 2;
  std::vector<cplx> v(full.values().begin(), full.values().begin() + half + 1);
  return {full.n(), BinRange::closed(0, half), std::move(v)};
}

SupportWindow SupportWindow::make(std::size_t offset, std::size_t m) {
  return {offset, m, next_pow2(2 * std::max<std::size_t>(m, 1))};
}

DenseSpectrum fft(std::span<const double> signal) {
  require_pow2(signal.size(), "fft");
  std::vector<cplx> a(signal.begin(), signal.end());
  transform(a);
  return DenseSpectrum(std::move(a));
}

DenseSpectrum fft(std::span<const cplx> signal) {
  require_pow2(signal.size(), "fft");
  std::vector<cplx> a(signal.begin(), signal.end());
  transform(a);
  return DenseSpectrum(std::move(a));
}

std::vector<cplx> ifft(const DenseSpectrum& spectrum) {
  const std::size_t n = spectrum.n();
  std::vector<cplx> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = std::conj(spectrum[k]);
  transform(a);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : a) v = std::conj(v) * scale;
  return a;
}

std::vector<cplx> padded_autocorrelation(std::span<const cplx> window) {
  const std::size_t m = window.size();
  if (m == 0) return {};
  const SupportWindow w = SupportWindow::make(0, m);

  std::vector<cplx> a(w.padded_len);
  std::copy(window.begin(), window.end(), a.begin());
  transform(a);
  for (auto& v : a) v = std::norm(v);
  // ifft of a real spectrum: conj(fft(conj(.)))/len, and conj is a no-op here.
  transform(a);
  const double scale = 1.0 / static_cast<double>(w.padded_len);

  // The forward transform of |A|^2 yields the correlation at negated lags:
  // out[j] = len * r[-j mod len] = len * conj(r[j]).
  std::vector<cplx> r(m);
  for (std::size_t j = 0; j < m; ++j) r[j] = std::conj(a[j]) * scale;
  r[0] = {r[0].real(), 0.0};
  return r;
}

DenseSpectrum expand_half_spectrum(const HalfSpectrum& h) {
  const std::size_t n = h.n();
  const std::size_t half = n / 2;
  std::vector<cplx> full(n);

  auto real_bin = [](cplx v, const char* which) {
    if (std::abs(v.imag()) > kRealnessTolerance * std::abs(v))
      throw SymmetryError(std::string("expand_half_spectrum: ") + which +
                          " bin is not real");
    return cplx{v.real(), 0.0};
  };

  full[0] = real_bin(h.at(0), "DC");
  full[half] = real_bin(h.at(half), "Nyquist");
  if (!h.support().empty()) {
    const std::size_t lo = std::max<std::size_t>(h.support().lo(), 1);
    const std::size_t hi = std::min(h.support().hi(), half - 1);
    for (std::size_t k = lo; k <= hi; ++k) {
      const cplx v = h.at(k);
      full[k] = v;
      full[n - k] = std::conj(v);
    }
  }
  return DenseSpectrum(std::move(full));
}

HalfSpectrum hadamard_on_support(const HalfSpectrum& h, const FourierFilter& f) {
  if (h.n() != f.n)
    throw ShapeError("hadamard_on_support: spectrum length " + std::to_string(h.n()) +
                     " vs filter length " + std::to_string(f.n));
  const BinRange common = h.support().intersect(f.support);
  if (common.empty()) return HalfSpectrum::zeros(h.n());

  std::vector<cplx> out(common.size());
  const auto hv = h.values();
  const std::size_t h_off = common.lo() - h.support().lo();
  const std::size_t f_off = common.lo() - f.support.lo();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = hv[h_off + i] * f.values[f_off + i];
  return {h.n(), common, std::move(out)};
}

}  // namespace scatter
