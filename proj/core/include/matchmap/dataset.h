// Copyright 2026 The matchmap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATCHMAP_DATASET_H_
#define MATCHMAP_DATASET_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace matchmap {

// A sequence of `size()` vectors in R^dim, stored row-major.
class VectorSet {
 public:
  VectorSet() = default;
  VectorSet(std::size_t size, std::size_t dim)
      : size_(size), dim_(dim), data_(size * dim, 0.0) {}
  // Throws InvalidInput if data.size() != size * dim.
  VectorSet(std::size_t size, std::size_t dim, std::vector<double> data);

  // Throws InvalidInput on ragged input. An empty list yields size 0, dim 0.
  static VectorSet FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<double> operator[](std::size_t i) {
    return {data_.data() + i * dim_, dim_};
  }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const VectorSet&, const VectorSet&) = default;

 private:
  std::size_t size_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

double SquaredDistance(std::span<const double> a, std::span<const double> b);

// Observed pair of sequences X (n vectors) and X# (m vectors), optionally with
// known per-vector noise levels.
class Dataset {
 public:
  // Throws InvalidInput unless 1 <= n <= m, both sets share a dimension
  // d >= 1, and any supplied noise levels have the right length and are
  // finite and strictly positive.
  Dataset(VectorSet x, VectorSet x_sharp,
          std::optional<std::vector<double>> sigma = std::nullopt,
          std::optional<std::vector<double>> sigma_sharp = std::nullopt);

  std::size_t n() const { return x_.size(); }
  std::size_t m() const { return x_sharp_.size(); }
  std::size_t dim() const { return x_.dim(); }

  const VectorSet& x() const { return x_; }
  const VectorSet& x_sharp() const { return x_sharp_; }
  const std::optional<std::vector<double>>& sigma() const { return sigma_; }
  const std::optional<std::vector<double>>& sigma_sharp() const {
    return sigma_sharp_;
  }
  bool has_noise_levels() const { return sigma_ && sigma_sharp_; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  VectorSet x_;
  VectorSet x_sharp_;
  std::optional<std::vector<double>> sigma_;
  std::optional<std::vector<double>> sigma_sharp_;
};

}  // namespace matchmap

#endif  // MATCHMAP_DATASET_H_
