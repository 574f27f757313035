#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdiag/error.hpp"
#include "pdiag/scalar.hpp"

namespace pdiag {

template <Scalar T>
using Vector = std::vector<T>;

/// Square dense matrix, row-major, dimension >= 1. Values are immutable once
/// built; every operation in matcore returns a fresh matrix.
template <Scalar T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix(std::size_t n, std::vector<T> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw DimensionError("matrix dimension must be at least 1");
    if (entries_.size() != n_ * n_) {
      throw DimensionError("expected " + std::to_string(n_ * n_) + " entries, got " +
                           std::to_string(entries_.size()));
    }
  }

  static DenseMatrix zeros(std::size_t n) {
    return DenseMatrix(n, std::vector<T>(n * n, scalar_from_int<T>(0)));
  }

  static DenseMatrix identity(std::size_t n) {
    return generate(n, [](std::size_t i, std::size_t j) { return scalar_from_int<T>(i == j ? 1 : 0); });
  }

  static DenseMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t n = rows.size();
    std::vector<T> entries;
    entries.reserve(n * n);
    for (const auto& r : rows) {
      if (r.size() != n) throw DimensionError("matrix rows must all have length " + std::to_string(n));
      entries.insert(entries.end(), r.begin(), r.end());
    }
    return DenseMatrix(n, std::move(entries));
  }

  template <class F>
  static DenseMatrix generate(std::size_t n, F&& f) {
    std::vector<T> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) entries.push_back(T(f(i, j)));
    return DenseMatrix(n, std::move(entries));
  }

  std::size_t size() const { return n_; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const T> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  const std::vector<T>& entries() const { return entries_; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t n_;
  std::vector<T> entries_;
};

/// Bijection on {0, ..., n-1}.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t v : image_) {
      if (v >= image_.size() || seen[v]) throw DomainError("permutation is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> image(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = i;
    return Permutation(std::move(image));
  }

  std::size_t size() const { return image_.size(); }
  std::size_t operator[](std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

}  // namespace pdiag
