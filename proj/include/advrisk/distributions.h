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

// Synthetic distributions with samplers, ground-truth labelers and exact or
// Monte Carlo measure oracles.

#ifndef ADVRISK_DISTRIBUTIONS_H_
#define ADVRISK_DISTRIBUTIONS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "advrisk/geometry.h"
#include "advrisk/intervals.h"
#include "advrisk/rng.h"
#include "advrisk/stats.h"

namespace advrisk {

using KeyValues = std::map<std::string, std::string>;
using Label = int;

// Uniform on [0,1]^d.
struct Hypercube {
  int d = 1;
};

// (1 - r) Unif([0,1]^d) + r Unif([0,rho]^d).
struct TwoCubeMixture {
  int d = 1;
  double r = 0.25;
  double rho = 0.1;
};

// Uniform on the unit sphere S^{d-1} in R^d.
struct Sphere {
  int d = 3;
};

// Head intervals (i, i + 1/2), i = 1..A, carrying half the mass, and tail
// intervals (A + j, A + j + 1/2), j = 1..B, carrying the other half.
struct LongTail {
  int A = 4;
  int B = 400;
  double tail_start() const { return A + 1.0; }
};

// Uniform on [0, W/2 - 2 rho] u [W/2 + 2 rho, W], embedded as x2 = 0 in R^2.
struct GappedSegment {
  double W = 10.0;
  double rho = 0.1;
};

using DistributionSpec =
    std::variant<Hypercube, TwoCubeMixture, Sphere, LongTail, GappedSegment>;

// Throws std::invalid_argument when a parameter invariant is violated.
void validate(const DistributionSpec& spec);
int ambient_dim(const DistributionSpec& spec);
std::string describe(const DistributionSpec& spec);

// Density of the first coordinate for distributions supported on the line
// {x_2 = ... = x_d = 0} (or on R itself); nullopt otherwise.
std::optional<PiecewiseDensity> line_density(const DistributionSpec& spec);
bool is_line_supported(const DistributionSpec& spec);

Box bounding_box(const DistributionSpec& spec);
bool in_support(const DistributionSpec& spec, const Point& p, double tol = 1e-9);

Point sample_one(const DistributionSpec& spec, CounterRng& rng);
std::vector<Point> sample(const DistributionSpec& spec, uint64_t n, uint64_t seed);

// Flat key/value form used by the harness config files.
KeyValues to_config(const DistributionSpec& spec);
DistributionSpec distribution_from_config(const KeyValues& kv);

// f*(x) = 1{x_1 > t}.
struct ThresholdX1 {
  double t = 0.5;
};
struct ConstantZero {};
using GroundTruth = std::variant<ThresholdX1, ConstantZero>;

Label ground_truth_label(const GroundTruth& gt, const Point& p);
Label ground_truth_label(const GroundTruth& gt, double x1);
std::string describe(const GroundTruth& gt);

// Points on the line whose f* label equals `label`, as an interval set
// restricted to `within`.
IntervalSet label_region(const GroundTruth& gt, Label label, const Segment& within);

struct BallUnion {
  std::vector<Ball> balls;
};
struct IntervalUnion {
  std::vector<Segment> intervals;
};
// Spherical cap {x_1 >= t}; only meaningful for Sphere.
struct Cap {
  double t = 0.0;
};
using MeasureQuery = std::variant<BallUnion, IntervalUnion, Cap>;

struct McOptions {
  uint64_t samples = 100000;
  uint64_t seed = 0;
};

// Exact for interval unions and for ball unions on line-supported
// distributions; incomplete-beta formula for caps; Monte Carlo otherwise.
Estimate measure(const DistributionSpec& spec, const MeasureQuery& query,
                 const McOptions& mc = {});

// Membership of a point in a query region.
bool region_contains(const MeasureQuery& query, const Point& p);

// Trace of a ball on the line x_2 = ... = 0, as an interval of x_1.
Segment line_section(const Ball& ball);

// P[x_1 >= t] for x uniform on S^{d-1}.
double sphere_cap_probability(int d, double t);

}  // namespace advrisk

#endif  // ADVRISK_DISTRIBUTIONS_H_
