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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scatter/errors.hpp"

namespace scatter {

using cplx = std::complex<double>;

/// True when n is 2^k for some k >= 0.
constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// A closed, possibly empty, interval of integer frequency bins.
/// Stored as (lo, count) so that emptiness is explicit.
class BinRange {
 public:
  BinRange() = default;
  // An interval with hi < lo is empty.
  static BinRange closed(std::size_t lo, std::size_t hi) {
    return hi < lo ? BinRange{} : BinRange{lo, hi - lo + 1};
  }
  static BinRange none() { return {}; }

  bool empty() const { return count_ == 0; }
  std::size_t lo() const { return lo_; }
  // Precondition: !empty().
  std::size_t hi() const { return lo_ + count_ - 1; }
  std::size_t size() const { return count_; }
  bool contains(std::size_t k) const { return count_ != 0 && k >= lo_ && k - lo_ < count_; }

  BinRange intersect(const BinRange& other) const;

  friend bool operator==(const BinRange&, const BinRange&) = default;

 private:
  BinRange(std::size_t lo, std::size_t count) : lo_(lo), count_(count) {}
  std::size_t lo_ = 0;
  std::size_t count_ = 0;
};

/// Full-length DFT of a length-n signal, n a power of two.
class DenseSpectrum {
 public:
  explicit DenseSpectrum(std::vector<cplx> values);

  std::size_t n() const { return values_.size(); }
  std::span<const cplx> values() const { return values_; }
  const cplx& operator[](std::size_t k) const { return values_[k]; }

 private:
  std::vector<cplx> values_;
};

/// Single-sided spectrum on bins 0..n/2. Only the support bins are stored;
/// every bin outside the support is exactly zero.
class HalfSpectrum {
 public:
  HalfSpectrum(std::size_t n, BinRange support, std::vector<cplx> values);

  static HalfSpectrum zeros(std::size_t n);
  /// Bins 0..n/2 of a full spectrum, with full support.
  static HalfSpectrum from_dense(const DenseSpectrum& full);

  std::size_t n() const { return n_; }
  std::size_t half() const { return n_ / 2; }
  const BinRange& support() const { return support_; }
  std::span<const cplx> values() const { return values_; }
  cplx at(std::size_t k) const {
    return support_.contains(k) ? values_[k - support_.lo()] : cplx{};
  }

 private:
  std::size_t n_;
  BinRange support_;
  std::vector<cplx> values_;
};

/// Real filter response sampled on its support only. lambda is empty for
/// scaling (low-pass) filters.
struct FourierFilter {
  std::size_t n = 0;
  BinRange support;
  std::vector<double> values;
  std::optional<double> lambda;

  double at(std::size_t k) const {
    return support.contains(k) ? values[k - support.lo()] : 0.0;
  }
};

/// Zero-padded FFT window used for the support autocorrelation.
struct SupportWindow {
  std::size_t offset = 0;
  std::size_t m = 0;
  std::size_t padded_len = 0;

  static SupportWindow make(std::size_t offset, std::size_t m);
};

// Forward transforms are unnormalized; ifft carries the 1/n factor.
DenseSpectrum fft(std::span<const double> signal);
DenseSpectrum fft(std::span<const cplx> signal);
std::vector<cplx> ifft(const DenseSpectrum& spectrum);

/// Linear autocorrelation r[j] = sum_k w[k+j] conj(w[k]) for lags 0..m-1,
/// evaluated with one padded FFT pair of size 2^ceil(log2(2m)).
std::vector<cplx> padded_autocorrelation(std::span<const cplx> window);

/// Rebuilds the conjugate-symmetric full spectrum. DC and Nyquist must be
/// real to within a relative 1e-9, otherwise SymmetryError.
DenseSpectrum expand_half_spectrum(const HalfSpectrum& h);

/// Pointwise product restricted to the intersection of the two supports.
HalfSpectrum hadamard_on_support(const HalfSpectrum& h, const FourierFilter& f);

}  // namespace scatter
