// Copyright 2026 The Authors.
//
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

#include "advrisk/pairwise.h"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace advrisk {
namespace {

constexpr std::size_t kQueryBlock = 256;

void check_dims(std::span<const Point> points, std::size_t d) {
  for (const Point& p : points) {
    if (p.dim() != d) throw std::invalid_argument("points must share one dimension");
  }
}

// Absolute slack on squared distances computed in single precision.
double float_slack(double scale) { return 1e-4 * scale + 1e-6; }

}  // namespace

bool gemm_preferred(std::size_t dim, NormKind norm) {
  return norm == NormKind::kEuclidean && dim >= 32;
}

RadiusIndex::RadiusIndex(std::span<const Point> points, NormKind norm)
    : n_(points.size()), d_(points.empty() ? 0 : points[0].dim()), norm_(norm) {
  check_dims(points, d_);
  coords_.reserve(n_ * d_);
  for (const Point& p : points) coords_.insert(coords_.end(), p.coords().begin(), p.coords().end());
  gemm_ = n_ > 0 && gemm_preferred(d_, norm);
  if (gemm_) {
    coords_f_.assign(coords_.begin(), coords_.end());
    sq_norms_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < d_; ++k) s += coords_[i * d_ + k] * coords_[i * d_ + k];
      sq_norms_[i] = s;
    }
  } else {
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return coords_[a * d_] < coords_[b * d_];
    });
    sorted_x1_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) sorted_x1_[i] = coords_[order_[i] * d_];
  }
}

std::vector<std::vector<std::size_t>> RadiusIndex::query(std::span<const Point> queries,
                                                         double radius) const {
  std::vector<std::vector<std::size_t>> out(queries.size());
  if (n_ == 0) return out;
  check_dims(queries, d_);
  auto row = [&](std::size_t i) {
    return std::span<const double>(coords_.data() + i * d_, d_);
  };
  if (!gemm_) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const double x1 = queries[q][0];
      auto lo = std::lower_bound(sorted_x1_.begin(), sorted_x1_.end(), x1 - radius);
      auto hi = std::upper_bound(sorted_x1_.begin(), sorted_x1_.end(), x1 + radius);
      for (auto it = lo; it != hi; ++it) {
        const std::size_t i = order_[static_cast<std::size_t>(it - sorted_x1_.begin())];
        if (distance(queries[q].coords(), row(i), norm_) <= radius) out[q].push_back(i);
      }
      std::sort(out[q].begin(), out[q].end());
    }
    return out;
  }
  const double r2 = radius * radius;
  std::vector<float> qf(kQueryBlock * d_);
  std::vector<float> gram(kQueryBlock * n_);
  for (std::size_t start = 0; start < queries.size(); start += kQueryBlock) {
    const std::size_t b = std::min(kQueryBlock, queries.size() - start);
    std::vector<double> qn(b);
    for (std::size_t j = 0; j < b; ++j) {
      const auto c = queries[start + j].coords();
      double s = 0.0;
      for (std::size_t k = 0; k < d_; ++k) {
        qf[j * d_ + k] = static_cast<float>(c[k]);
        s += c[k] * c[k];
      }
      qn[j] = s;
    }
    cblas_sgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(b),
                static_cast<int>(n_), static_cast<int>(d_), 1.0f, qf.data(),
                static_cast<int>(d_), coords_f_.data(), static_cast<int>(d_), 0.0f,
                gram.data(), static_cast<int>(n_));
    for (std::size_t j = 0; j < b; ++j) {
      const float* g = gram.data() + j * n_;
      for (std::size_t i = 0; i < n_; ++i) {
        const double approx = qn[j] + sq_norms_[i] - 2.0 * static_cast<double>(g[i]);
        if (approx <= r2 + float_slack(qn[j] + sq_norms_[i]) &&
            distance(queries[start + j].coords(), row(i), norm_) <= radius) {
          out[start + j].push_back(i);
        }
      }
    }
  }
  return out;
}

double min_pairwise_distance(std::span<const Point> points, NormKind norm) {
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  const std::size_t n = points.size();
  const std::size_t d = points[0].dim();
  check_dims(points, d);
  double best = std::numeric_limits<double>::infinity();
  if (!gemm_preferred(d, norm)) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (points[order[b]][0] - points[order[a]][0] > best) break;
        best = std::min(best, distance(points[order[a]], points[order[b]], norm));
      }
    }
    return best;
  }
  // GEMM filter: track pairs whose single-precision squared distance is near
  // the running minimum, then settle them in double precision.
  std::vector<float> all(n * d);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      all[i * d + k] = static_cast<float>(points[i][k]);
      s += points[i][k] * points[i][k];
    }
    sq[i] = s;
  }
  double best_approx = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  std::vector<float> gram(kQueryBlock * n);
  for (std::size_t start = 0; start + 1 < n; start += kQueryBlock) {
    const std::size_t b = std::min(kQueryBlock, n - start);
    // Only columns > start matter; compute against the trailing block.
    const std::size_t cols = n - start;
    cblas_sgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(b),
                static_cast<int>(cols), static_cast<int>(d), 1.0f, all.data() + start * d,
                static_cast<int>(d), all.data() + start * d, static_cast<int>(d), 0.0f,
                gram.data(), static_cast<int>(cols));
    for (std::size_t j = 0; j < b; ++j) {
      const std::size_t i = start + j;
      const float* g = gram.data() + j * cols;
      for (std::size_t c = j + 1; c < cols; ++c) {
        const std::size_t k = start + c;
        const double scale = sq[i] + sq[k];
        const double approx = scale - 2.0 * static_cast<double>(g[c]);
        if (approx <= best_approx + float_slack(scale)) {
          if (approx < best_approx) best_approx = approx;
          candidates.emplace_back(i, k);
        }
      }
    }
    // Keep the candidate list short as the bound tightens.
    if (candidates.size() > 4096) {
      std::erase_if(candidates, [&](const auto& pr) {
        const double scale = sq[pr.first] + sq[pr.second];
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += points[pr.first][k] * points[pr.second][k];
        return scale - 2.0 * dot > best_approx + 2.0 * float_slack(scale);
      });
    }
  }
  for (const auto& [i, k] : candidates) {
    best = std::min(best, distance(points[i], points[k], norm));
  }
  return best;
}

}  // namespace advrisk
