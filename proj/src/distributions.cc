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

#include "advrisk/distributions.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace advrisk {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Shortest text that parses back to the same double.
std::string fmt_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

const std::string& lookup(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    throw std::invalid_argument("missing distribution parameter '" + key + "'");
  }
  return it->second;
}

int lookup_int(const KeyValues& kv, const std::string& key) {
  return std::stoi(lookup(kv, key));
}

double lookup_double(const KeyValues& kv, const std::string& key) {
  return std::stod(lookup(kv, key));
}


}  // namespace

void validate(const DistributionSpec& spec) {
  std::visit(
      Overloaded{
          [](const Hypercube& s) { require(s.d >= 1, "hypercube: d must be >= 1"); },
          [](const TwoCubeMixture& s) {
            require(s.d >= 1, "two-cube: d must be >= 1");
            require(s.r > 0 && s.r < 0.5, "two-cube: r must lie in (0, 1/2)");
            require(s.rho > 0 && s.rho < 0.5, "two-cube: rho must lie in (0, 1/2)");
          },
          [](const Sphere& s) { require(s.d >= 1, "sphere: d must be >= 1"); },
          [](const LongTail& s) {
            require(s.A >= 1 && s.A < s.B, "long-tail: need 0 < A < B");
          },
          [](const GappedSegment& s) {
            require(s.rho > 0, "gapped segment: rho must be positive");
            require(s.W > 4 * s.rho, "gapped segment: need W > 4 rho");
          },
      },
      spec);
}

int ambient_dim(const DistributionSpec& spec) {
  return std::visit(Overloaded{
                        [](const Hypercube& s) { return s.d; },
                        [](const TwoCubeMixture& s) { return s.d; },
                        [](const Sphere& s) { return s.d; },
                        [](const LongTail&) { return 1; },
                        [](const GappedSegment&) { return 2; },
                    },
                    spec);
}

std::string describe(const DistributionSpec& spec) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Hypercube& s) { os << "hypercube(d=" << s.d << ")"; },
                 [&](const TwoCubeMixture& s) {
                   os << "two-cube(d=" << s.d << ", r=" << s.r << ", rho=" << s.rho << ")";
                 },
                 [&](const Sphere& s) { os << "sphere(d=" << s.d << ")"; },
                 [&](const LongTail& s) { os << "long-tail(A=" << s.A << ", B=" << s.B << ")"; },
                 [&](const GappedSegment& s) {
                   os << "gapped-segment(W=" << s.W << ", rho=" << s.rho << ")";
                 },
             },
             spec);
  return os.str();
}

std::optional<PiecewiseDensity> line_density(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Hypercube& s) -> std::optional<PiecewiseDensity> {
            if (s.d != 1) return std::nullopt;
            return PiecewiseDensity({{0.0, 1.0, 1.0}});
          },
          [](const TwoCubeMixture& s) -> std::optional<PiecewiseDensity> {
            if (s.d != 1) return std::nullopt;
            return PiecewiseDensity({{0.0, s.rho, (1 - s.r) + s.r / s.rho},
                                     {s.rho, 1.0, 1 - s.r}});
          },
          [](const Sphere&) -> std::optional<PiecewiseDensity> { return std::nullopt; },
          [](const LongTail& s) -> std::optional<PiecewiseDensity> {
            std::vector<DensityPiece> pieces;
            pieces.reserve(static_cast<std::size_t>(s.A + s.B));
            for (int i = 1; i <= s.A; ++i) {
              pieces.push_back({double(i), i + 0.5, 1.0 / s.A});
            }
            for (int j = 1; j <= s.B; ++j) {
              pieces.push_back({double(s.A + j), s.A + j + 0.5, 1.0 / s.B});
            }
            return PiecewiseDensity(std::move(pieces));
          },
          [](const GappedSegment& s) -> std::optional<PiecewiseDensity> {
            const double density = 1.0 / (s.W - 4 * s.rho);
            return PiecewiseDensity({{0.0, s.W / 2 - 2 * s.rho, density},
                                     {s.W / 2 + 2 * s.rho, s.W, density}});
          },
      },
      spec);
}

bool is_line_supported(const DistributionSpec& spec) {
  return line_density(spec).has_value();
}

Box bounding_box(const DistributionSpec& spec) {
  const auto d = static_cast<std::size_t>(ambient_dim(spec));
  return std::visit(
      Overloaded{
          [&](const Hypercube&) { return Box{std::vector(d, 0.0), std::vector(d, 1.0)}; },
          [&](const TwoCubeMixture&) {
            return Box{std::vector(d, 0.0), std::vector(d, 1.0)};
          },
          [&](const Sphere&) { return Box{std::vector(d, -1.0), std::vector(d, 1.0)}; },
          [&](const LongTail& s) { return Box{{1.0}, {s.A + s.B + 0.5}}; },
          [&](const GappedSegment& s) { return Box{{0.0, 0.0}, {s.W, 0.0}}; },
      },
      spec);
}

bool in_support(const DistributionSpec& spec, const Point& p, double tol) {
  if (static_cast<int>(p.dim()) != ambient_dim(spec)) return false;
  if (const auto* s = std::get_if<Sphere>(&spec)) {
    double n2 = 0.0;
    for (double c : p.coords()) n2 += c * c;
    (void)s;
    return std::abs(std::sqrt(n2) - 1.0) <= tol;
  }
  if (auto density = line_density(spec)) {
    for (std::size_t i = 1; i < p.dim(); ++i) {
      if (std::abs(p[i]) > tol) return false;
    }
    const IntervalSet support = density->support();
    for (const Segment& seg : support.segments()) {
      if (p[0] >= seg.lo - tol && p[0] <= seg.hi + tol) return true;
    }
    return false;
  }
  const Box box = bounding_box(spec);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i] < box.lo[i] - tol || p[i] > box.hi[i] + tol) return false;
  }
  return true;
}

Point sample_one(const DistributionSpec& spec, CounterRng& rng) {
  return std::visit(
      Overloaded{
          [&](const Hypercube& s) {
            std::vector<double> c(static_cast<std::size_t>(s.d));
            for (double& v : c) v = rng.uniform();
            return Point(std::move(c));
          },
          [&](const TwoCubeMixture& s) {
            const double scale = rng.bernoulli(s.r) ? s.rho : 1.0;
            std::vector<double> c(static_cast<std::size_t>(s.d));
            for (double& v : c) v = scale * rng.uniform();
            return Point(std::move(c));
          },
          [&](const Sphere& s) {
            std::vector<double> c(static_cast<std::size_t>(s.d));
            double n2 = 0.0;
            do {
              n2 = 0.0;
              for (double& v : c) {
                v = rng.normal();
                n2 += v * v;
              }
            } while (n2 == 0.0);
            const double inv = 1.0 / std::sqrt(n2);
            for (double& v : c) v *= inv;
            return Point(std::move(c));
          },
          [&](const LongTail& s) {
            const double offset = 0.5 * rng.uniform();
            if (rng.bernoulli(0.5)) {
              const auto i = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(s.A)));
              return Point({i + offset});
            }
            const auto j = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(s.B)));
            return Point({s.A + j + offset});
          },
          [&](const GappedSegment& s) {
            const double left = s.W / 2 - 2 * s.rho;
            double x = rng.uniform() * (s.W - 4 * s.rho);
            if (x > left) x += 4 * s.rho;
            return Point({x, 0.0});
          },
      },
      spec);
}

std::vector<Point> sample(const DistributionSpec& spec, uint64_t n, uint64_t seed) {
  validate(spec);
  CounterRng rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) out.push_back(sample_one(spec, rng));
  return out;
}

KeyValues to_config(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Hypercube& s) {
            return KeyValues{{"distribution", "hypercube"}, {"dim", std::to_string(s.d)}};
          },
          [](const TwoCubeMixture& s) {
            return KeyValues{{"distribution", "two-cube"},
                             {"dim", std::to_string(s.d)},
                             {"mix_r", fmt_double(s.r)},
                             {"mix_rho", fmt_double(s.rho)}};
          },
          [](const Sphere& s) {
            return KeyValues{{"distribution", "sphere"}, {"dim", std::to_string(s.d)}};
          },
          [](const LongTail& s) {
            return KeyValues{{"distribution", "long-tail"},
                             {"A", std::to_string(s.A)},
                             {"B", std::to_string(s.B)}};
          },
          [](const GappedSegment& s) {
            return KeyValues{{"distribution", "gapped-segment"},
                             {"W", fmt_double(s.W)},
                             {"gap_rho", fmt_double(s.rho)}};
          },
      },
      spec);
}

DistributionSpec distribution_from_config(const KeyValues& kv) {
  const std::string& name = lookup(kv, "distribution");
  DistributionSpec spec;
  if (name == "hypercube") {
    spec = Hypercube{lookup_int(kv, "dim")};
  } else if (name == "two-cube") {
    spec = TwoCubeMixture{lookup_int(kv, "dim"), lookup_double(kv, "mix_r"),
                          lookup_double(kv, "mix_rho")};
  } else if (name == "sphere") {
    spec = Sphere{lookup_int(kv, "dim")};
  } else if (name == "long-tail") {
    spec = LongTail{lookup_int(kv, "A"), lookup_int(kv, "B")};
  } else if (name == "gapped-segment") {
    spec = GappedSegment{lookup_double(kv, "W"), lookup_double(kv, "gap_rho")};
  } else {
    throw std::invalid_argument("unknown distribution '" + name + "'");
  }
  validate(spec);
  return spec;
}

Label ground_truth_label(const GroundTruth& gt, double x1) {
  if (const auto* t = std::get_if<ThresholdX1>(&gt)) return x1 > t->t ? 1 : 0;
  return 0;
}

Label ground_truth_label(const GroundTruth& gt, const Point& p) {
  if (p.dim() == 0) throw std::invalid_argument("ground truth of an empty point");
  return ground_truth_label(gt, p[0]);
}

std::string describe(const GroundTruth& gt) {
  if (const auto* t = std::get_if<ThresholdX1>(&gt)) {
    return "threshold(x1 > " + fmt_double(t->t) + ")";
  }
  return "zero";
}

IntervalSet label_region(const GroundTruth& gt, Label label, const Segment& within) {
  IntervalSet out;
  if (const auto* t = std::get_if<ThresholdX1>(&gt)) {
    // Label 1 on (t, inf); the open end does not change any measure.
    const Segment half = label == 1 ? Segment{t->t, within.hi} : Segment{within.lo, t->t};
    out.insert(intersect(half, within));
    return out;
  }
  if (label == 0) out.insert(within);
  return out;
}

Segment line_section(const Ball& ball) {
  const Point& c = ball.center;
  double off = 0.0;  // distance from the center to the line, in the ball's norm
  if (ball.norm == NormKind::kEuclidean) {
    for (std::size_t i = 1; i < c.dim(); ++i) off += c[i] * c[i];
    off = std::sqrt(off);
  } else {
    for (std::size_t i = 1; i < c.dim(); ++i) off = std::max(off, std::abs(c[i]));
  }
  if (off > ball.radius) return Segment{1.0, 0.0};
  const double half = ball.norm == NormKind::kEuclidean
                          ? std::sqrt(ball.radius * ball.radius - off * off)
                          : ball.radius;
  return Segment{c[0] - half, c[0] + half};
}

double sphere_cap_probability(int d, double t) {
  if (d < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  if (t > 1.0) return 0.0;
  if (t <= -1.0) return 1.0;
  if (d == 1) return t <= 1.0 ? 0.5 : 0.0;  // S^0 = {-1, +1}
  if (t < 0.0) return 1.0 - sphere_cap_probability(d, -t);
  return 0.5 * incomplete_beta(1.0 - t * t, 0.5 * (d - 1), 0.5);
}

bool region_contains(const MeasureQuery& query, const Point& p) {
  return std::visit(Overloaded{
                        [&](const BallUnion& q) {
                          return std::any_of(q.balls.begin(), q.balls.end(),
                                             [&](const Ball& b) { return contains(b, p); });
                        },
                        [&](const IntervalUnion& q) {
                          return std::any_of(
                              q.intervals.begin(), q.intervals.end(),
                              [&](const Segment& s) { return p[0] >= s.lo && p[0] <= s.hi; });
                        },
                        [&](const Cap& q) { return p[0] >= q.t; },
                    },
                    query);
}

Estimate measure(const DistributionSpec& spec, const MeasureQuery& query,
                 const McOptions& mc) {
  validate(spec);
  const auto density = line_density(spec);
  if (const auto* cap = std::get_if<Cap>(&query)) {
    const auto* sphere = std::get_if<Sphere>(&spec);
    if (sphere == nullptr) {
      throw std::invalid_argument("CAP queries are only defined for the sphere");
    }
    return Estimate::exact(sphere_cap_probability(sphere->d, cap->t),
                           EstimateMethod::kExact1D);
  }
  if (const auto* iv = std::get_if<IntervalUnion>(&query)) {
    if (!density) {
      throw std::invalid_argument(
          "INTERVAL_UNION queries need a distribution supported on a line");
    }
    return Estimate::exact(density->mass(IntervalSet::from_segments(iv->intervals)),
                           EstimateMethod::kExact1D);
  }
  const auto& balls = std::get<BallUnion>(query).balls;
  for (const Ball& b : balls) {
    if (static_cast<int>(b.center.dim()) != ambient_dim(spec)) {
      throw std::invalid_argument("ball dimension does not match the distribution");
    }
  }
  if (density) {
    std::vector<Segment> segs;
    segs.reserve(balls.size());
    for (const Ball& b : balls) segs.push_back(line_section(b));
    return Estimate::exact(density->mass(IntervalSet::from_segments(segs)),
                           EstimateMethod::kExact1D);
  }
  uint64_t hits = 0;
  for (uint64_t i = 0; i < mc.samples; ++i) {
    CounterRng rng(derive_seed(mc.seed, i));
    const Point x = sample_one(spec, rng);
    if (region_contains(query, x)) ++hits;
  }
  return Estimate::from_counts(hits, mc.samples, EstimateMethod::kMonteCarlo);
}

}  // namespace advrisk
