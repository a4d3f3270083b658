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

#include "advrisk/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "advrisk/classifiers.h"
#include "advrisk/games.h"
#include "advrisk/longtail_tshape.h"
#include "advrisk/noise.h"
#include "advrisk/risk.h"
#include "advrisk/subcover.h"

namespace advrisk::harness {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";
constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Schemas

enum class Kind { kInt, kReal, kText, kBool, kNorm, kIntList };

struct Field {
  std::string name;
  Kind kind = Kind::kReal;
  std::string fallback;  // empty: optional, absent unless given
  std::string help;
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = false;
  bool hi_open = false;
  std::vector<std::string> choices;
};

Field real(std::string name, std::string def, std::string help, double lo = -kInf,
           bool lo_open = false, double hi = kInf, bool hi_open = false) {
  return Field{std::move(name), Kind::kReal, std::move(def), std::move(help), lo, hi,
               lo_open, hi_open, {}};
}
Field integer(std::string name, std::string def, std::string help, double lo = -kInf,
              double hi = kInf) {
  return Field{std::move(name), Kind::kInt, std::move(def), std::move(help), lo, hi,
               false, false, {}};
}
Field text(std::string name, std::string def, std::string help,
           std::vector<std::string> choices = {}) {
  return Field{std::move(name), Kind::kText, std::move(def), std::move(help), -kInf, kInf,
               false, false, std::move(choices)};
}
Field boolean(std::string name, std::string def, std::string help) {
  return Field{std::move(name), Kind::kBool, std::move(def), std::move(help), -kInf, kInf,
               false, false, {}};
}
Field norm_field(std::string def) {
  return Field{"norm", Kind::kNorm, std::move(def), "euclidean | maximum", -kInf, kInf,
               false, false, {}};
}

std::optional<double> parse_real(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int64_t> parse_int(const std::string& s) {
  int64_t v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

std::optional<std::vector<int64_t>> parse_int_list(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_int(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

class Params {
 public:
  explicit Params(KeyValues kv) : kv_(std::move(kv)) {}
  bool has(const std::string& k) const { return kv_.count(k) != 0; }
  const std::string& text(const std::string& k) const {
    auto it = kv_.find(k);
    if (it == kv_.end()) throw std::logic_error("missing parameter " + k);
    return it->second;
  }
  double real(const std::string& k) const { return *parse_real(text(k)); }
  int64_t integer(const std::string& k) const { return *parse_int(text(k)); }
  uint64_t count(const std::string& k) const { return static_cast<uint64_t>(integer(k)); }
  bool flag(const std::string& k) const { return text(k) == "true" || text(k) == "1"; }
  NormKind norm() const { return parse_norm(text("norm")); }
  std::vector<int64_t> int_list(const std::string& k) const { return *parse_int_list(text(k)); }
  const KeyValues& all() const { return kv_; }

 private:
  KeyValues kv_;
};

std::vector<Field> distribution_fields(const std::string& def) {
  return {
      text("distribution", def, "distribution family",
           {"hypercube", "two-cube", "sphere", "long-tail", "gapped-segment"}),
      integer("dim", "1", "dimension (hypercube, two-cube, sphere)", 1),
      real("mix_r", "0.25", "two-cube weight of the small cube", 0.0, true, 0.5, true),
      real("mix_rho", "0.1", "two-cube side of the small cube", 0.0, true, 0.5, true),
      integer("A", "4", "long-tail head intervals", 1),
      integer("B", "400", "long-tail tail intervals", 1),
      real("W", "10", "gapped-segment length", 0.0, true),
      real("gap_rho", "0.1", "gapped-segment gap parameter", 0.0, true, 0.5, true),
  };
}

std::vector<Field> truth_fields() {
  return {text("ground_truth", "threshold", "threshold | zero", {"threshold", "zero"}),
          real("threshold", "0.5", "threshold on x_1")};
}

struct Schema {
  std::vector<Field> fields;
  bool has_distribution = false;
  std::function<void(const Params&, std::vector<Violation>&)> cross;
};

DistributionSpec spec_of(const Params& p) {
  KeyValues kv;
  for (const char* k : {"distribution", "dim", "mix_r", "mix_rho", "A", "B", "W", "gap_rho"}) {
    kv[k] = p.text(k);
  }
  return distribution_from_config(kv);
}

GroundTruth truth_of(const Params& p) {
  if (p.text("ground_truth") == "zero") return ConstantZero{};
  return ThresholdX1{p.real("threshold")};
}

MeasureQuery region_of(const Params& p, const DistributionSpec& spec) {
  const std::string& r = p.text("region");
  if (r == "support") {
    if (auto density = line_density(spec)) {
      const IntervalSet support = density->support();
      return IntervalUnion{{support.segments().begin(), support.segments().end()}};
    }
    if (std::holds_alternative<Sphere>(spec)) {
      throw std::invalid_argument("region=support has no grid cover on the sphere");
    }
    const int d = ambient_dim(spec);
    return BallUnion{{Ball{Point(std::vector<double>(static_cast<std::size_t>(d), 0.5)), 0.5,
                           NormKind::kMaximum}}};
  }
  if (r == "small-cube") {
    const auto* t = std::get_if<TwoCubeMixture>(&spec);
    if (t == nullptr) throw std::invalid_argument("region=small-cube needs distribution=two-cube");
    return BallUnion{{Ball{Point(std::vector<double>(static_cast<std::size_t>(t->d), t->rho / 2)),
                           t->rho / 2, NormKind::kMaximum}}};
  }
  if (r == "head") {
    const auto* lt = std::get_if<LongTail>(&spec);
    if (lt == nullptr) throw std::invalid_argument("region=head needs distribution=long-tail");
    IntervalUnion u;
    for (int i = 1; i <= lt->A; ++i) u.intervals.push_back(Segment{i + 0.0, i + 0.5});
    return u;
  }
  if (r.rfind("interval:", 0) == 0) {
    if (!is_line_supported(spec)) throw std::invalid_argument("interval regions need a line distribution");
    IntervalUnion u;
    std::stringstream ss(r.substr(9));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("interval must be lo:hi");
      auto lo = parse_real(item.substr(0, colon));
      auto hi = parse_real(item.substr(colon + 1));
      if (!lo || !hi || *hi < *lo) throw std::invalid_argument("bad interval '" + item + "'");
      u.intervals.push_back(Segment{*lo, *hi});
    }
    if (u.intervals.empty()) throw std::invalid_argument("empty interval list");
    return u;
  }
  throw std::invalid_argument("region must be support | small-cube | head | interval:lo:hi[,...]");
}

void check_distribution(const Params& p, std::vector<Violation>& v) {
  try {
    spec_of(p);
  } catch (const std::exception& e) {
    v.push_back({"distribution", e.what()});
  }
}

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> all = [] {
    std::map<std::string, Schema> s;
    {
      Schema sc;
      sc.has_distribution = true;
      sc.fields = distribution_fields("hypercube");
      for (Field& f : truth_fields()) sc.fields.push_back(f);
      sc.fields.push_back(text("region", "support",
                               "support | small-cube | head | interval:lo:hi[,lo:hi...]"));
      sc.fields.push_back(real("rho", "0.1", "attack radius", 0.0, true));
      sc.fields.push_back(real("eta", "0.2", "label noise rate", 0.0, true, 1.0));
      sc.fields.push_back(real("delta", "0.05", "failure probability", 0.0, true, 1.0, true));
      sc.fields.push_back(integer("trials", "200", "independent datasets", 1, 1e6));
      sc.fields.push_back(norm_field("maximum"));
      sc.fields.push_back(real("cover_radius", "", "cover radius (default rho/2)", 0.0, true));
      sc.fields.push_back(integer("mc_samples", "100000", "Monte Carlo samples off the line", 1));
      sc.cross = [](const Params& p, std::vector<Violation>& v) {
        check_distribution(p, v);
        if (!v.empty()) return;
        try {
          region_of(p, spec_of(p));
        } catch (const std::exception& e) {
          v.push_back({"region", e.what()});
        }
      };
      s["thm2"] = sc;
    }
    {
      Schema sc;
      sc.fields = {
          integer("dim", "1000", "sphere dimension d", 2, 1e5),
          real("rho", "0.2", "attack radius (0 < rho < 1/4)", 0.0, true),
          real("eta", "0.5", "label noise rate", 0.0, false, 1.0),
          integer("n_test", "100000", "Monte Carlo test points", 1),
          integer("n_directions", "4", "random probes per test point", 1, 1e4),
          integer("m", "", "training set size (default floor(1.01^d))", 1),
          boolean("min_distance", "true", "report the minimum pairwise sample distance"),
          integer("distance_seeds", "0", "extra seeds for the pairwise-distance check", 0, 1e4),
      };
      sc.cross = [](const Params& p, std::vector<Violation>& v) {
        const double rho = p.real("rho");
        if (!(rho < 0.25)) {
          v.push_back({"rho", "rho = " + p.text("rho") +
                                  " violates rho < 1/4, required by the sphere tightness bound"});
        }
        const int d = static_cast<int>(p.integer("dim"));
        double m = 0.0;
        try {
          m = p.has("m") ? static_cast<double>(p.integer("m"))
                         : static_cast<double>(sphere_sample_count(d));
        } catch (const std::exception& e) {
          v.push_back({"dim", e.what()});
          return;
        }
        if (m * d > 5e7) {
          v.push_back({"dim", "m * d = " + std::to_string(m * d) + " exceeds desk scale 5e7"});
        }
      };
      s["sphere"] = sc;
    }
    {
      Schema sc;
      sc.has_distribution = true;
      sc.fields = distribution_fields("hypercube");
      for (Field& f : truth_fields()) sc.fields.push_back(f);
      sc.fields.push_back(real("rho", "0.05", "poisoner radius", 0.0, true));
      sc.fields.push_back(real("eta", "0.1", "label noise rate", 0.0, true, 1.0));
      sc.fields.push_back(integer("m", "100", "reference sample size; N = floor(eta m)", 1));
      sc.fields.push_back(real("delta", "0.1", "failure probability", 0.0, true, 1.0, true));
      sc.fields.push_back(integer("trials", "200", "uniform-adversary trials", 1, 1e6));
      sc.fields.push_back(real("candidate_step", "", "poisoner grid step (default rho/10)", 0.0, true));
      sc.fields.push_back(norm_field("maximum"));
      sc.fields.push_back(integer("mc_samples", "20000", "Monte Carlo samples off the line", 1));
      sc.cross = [](const Params& p, std::vector<Violation>& v) {
        check_distribution(p, v);
        if (stable_floor(p.real("eta") * static_cast<double>(p.integer("m"))) < 1.0) {
          v.push_back({"eta,m", "N = floor(eta * m) must be >= 1"});
        }
        if (v.empty() && !is_line_supported(spec_of(p)) && ambient_dim(spec_of(p)) > 3) {
          v.push_back({"distribution", "poisoner search needs a line distribution or d <= 3"});
        }
      };
      s["poison-game"] = sc;
    }
    {
      Schema sc;
      sc.fields = {
          integer("A", "4", "head intervals", 1),
          integer("B", "400", "tail intervals", 1),
          real("eta", "0.2", "noise rate (tail flips use 2 eta)", 0.0, false, 0.5),
          real("rho", "0.1", "attack radius", 0.0, true, 0.5, true),
          real("delta", "0.1", "failure probability", 0.0, true, 0.5, true),
          integer("trials", "100", "independent datasets", 1, 1e6),
          real("epsilon", "1e-9", "half-width of memorized intervals", 0.0),
          integer("m", "", "sample size (default from the covering bound)", 1),
          text("scaling_B", "", "comma-separated B values for the decay fit"),
      };
      sc.cross = [](const Params& p, std::vector<Violation>& v) {
        if (!(p.integer("A") < p.integer("B"))) v.push_back({"A,B", "A must be smaller than B"});
        if (p.real("eta") == 0.0 && !p.has("m")) {
          v.push_back({"eta,m", "eta = 0 makes the sample-size formula infinite; set m"});
        }
        if (p.has("scaling_B")) {
          auto list = parse_int_list(p.text("scaling_B"));
          if (!list || list->size() < 2) {
            v.push_back({"scaling_B", "expected at least two comma-separated integers"});
          } else {
            for (int64_t b : *list) {
              if (b <= p.integer("A")) v.push_back({"scaling_B", "every B must exceed A"});
            }
          }
        }
      };
      s["longtail"] = sc;
    }
    {
      Schema sc;
      sc.fields = {
          real("W", "10", "segment length", 0.0, true),
          real("rho", "0.1", "attack radius and gap parameter", 0.0, true),
          real("gamma", "1.0", "T head half-width", 0.0, true),
          real("eta", "0.2", "label noise rate", 0.0, false, 1.0),
          integer("m", "5", "training set size", 1),
          integer("trials", "10000", "independent datasets", 1, 1e7),
      };
      sc.cross = [](const Params& p, std::vector<Violation>& v) {
        if (!(p.real("gamma") > p.real("rho"))) {
          v.push_back({"gamma,rho", "gamma = " + p.text("gamma") + " must exceed rho = " +
                                        p.text("rho") + " (T-shaped heads need gamma > rho)"});
        }
        if (!(p.real("W") >= 100.0 * p.real("rho"))) {
          v.push_back({"W,rho", "W must be at least 100 rho"});
        }
      };
      s["tshape"] = sc;
    }
    {
      Schema sc;
      sc.has_distribution = true;
      sc.fields = distribution_fields("hypercube");
      sc.fields.push_back(integer("n_balls", "50", "ball centers sampled from the distribution", 1, 1e5));
      sc.fields.push_back(real("radius", "0.05", "common radius", 0.0, true));
      sc.fields.push_back(real("alpha", "0.5", "subcover parameter", 0.0, true, 1.0, true));
      sc.fields.push_back(norm_field("maximum"));
      sc.fields.push_back(integer("mc_samples", "100000", "Monte Carlo samples off the line", 1));
      sc.cross = check_distribution;
      s["subcover-demo"] = sc;
    }
    {
      Schema sc;
      sc.has_distribution = true;
      sc.fields = distribution_fields("two-cube");
      sc.fields.push_back(real("rho", "0.1", "attack radius", 0.0, true));
      sc.fields.push_back(real("r_target", "0.0625", "target risk (needs mu(C) >= 4 r_target)", 0.0, true));
      sc.fields.push_back(real("cell_side", "", "grid cell side (default rho)", 0.0, true));
      sc.cross = [](const Params& p, std::vector<Violation>& v) {
        check_distribution(p, v);
        if (p.text("distribution") == "sphere") {
          v.push_back({"distribution", "optimize-c needs a grid-discretizable distribution"});
        }
        if (4.0 * p.real("r_target") > 1.0) {
          v.push_back({"r_target", "4 r_target exceeds the total mass 1 (infeasible)"});
        }
      };
      s["optimize-c"] = sc;
    }
    {
      Schema sc;
      sc.has_distribution = true;
      sc.fields = distribution_fields("sphere");
      for (Field& f : truth_fields()) sc.fields.push_back(f);
      sc.fields.push_back(integer("n", "500", "points", 2, 20000));
      sc.fields.push_back(real("eta", "0", "label noise rate", 0.0, false, 1.0));
      sc.fields.push_back(norm_field("euclidean"));
      sc.fields.push_back(integer("bins", "50", "histogram bins", 1, 1e5));
      sc.cross = check_distribution;
      s["distances"] = sc;
    }
    return s;
  }();
  return all;
}

std::string range_text(const Field& f) {
  std::ostringstream os;
  if (f.lo > -kInf) os << (f.lo_open ? "> " : ">= ") << f.lo;
  if (f.lo > -kInf && f.hi < kInf) os << " and ";
  if (f.hi < kInf) os << (f.hi_open ? "< " : "<= ") << f.hi;
  return os.str();
}

void check_field(const Field& f, const std::string& value, std::vector<Violation>& v) {
  auto in_range = [&](double x) {
    return (f.lo_open ? x > f.lo : x >= f.lo) && (f.hi_open ? x < f.hi : x <= f.hi);
  };
  switch (f.kind) {
    case Kind::kReal: {
      auto x = parse_real(value);
      if (!x) {
        v.push_back({f.name, "'" + value + "' is not a finite real number"});
      } else if (!in_range(*x)) {
        v.push_back({f.name, f.name + " = " + value + " violates " + range_text(f)});
      }
      break;
    }
    case Kind::kInt: {
      auto x = parse_int(value);
      if (!x) {
        v.push_back({f.name, "'" + value + "' is not an integer"});
      } else if (!in_range(static_cast<double>(*x))) {
        v.push_back({f.name, f.name + " = " + value + " violates " + range_text(f)});
      }
      break;
    }
    case Kind::kBool:
      if (value != "true" && value != "false" && value != "1" && value != "0") {
        v.push_back({f.name, "expected true or false"});
      }
      break;
    case Kind::kNorm:
      try {
        parse_norm(value);
      } catch (const std::exception&) {
        v.push_back({f.name, "expected euclidean or maximum"});
      }
      break;
    case Kind::kIntList:
      if (!parse_int_list(value)) v.push_back({f.name, "expected comma-separated integers"});
      break;
    case Kind::kText:
      if (!f.choices.empty() &&
          std::find(f.choices.begin(), f.choices.end(), value) == f.choices.end()) {
        std::string all;
        for (const auto& c : f.choices) all += (all.empty() ? "" : " | ") + c;
        v.push_back({f.name, "'" + value + "' is not one of " + all});
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Experiments

struct Output {
  json result;
  std::vector<PlotRow> plot;
  std::vector<std::pair<std::string, std::string>> files;  // extra outputs
};

json to_json(const Estimate& e) {
  return json{{"value", e.value},
              {"ci_low", e.ci_low},
              {"ci_high", e.ci_high},
              {"n", e.n},
              {"method", std::string(to_string(e.method))}};
}

json to_json(const MeanSummary& s) {
  return json{{"mean", s.mean},
              {"std_error", s.std_error},
              {"ci_low", s.ci_low},
              {"ci_high", s.ci_high},
              {"n", s.n}};
}

json point_json(const Point& p) { return json(std::vector<double>(p.coords().begin(), p.coords().end())); }

json rate_json(std::size_t hits, std::size_t n) {
  const Interval95 ci = clopper_pearson(hits, n);
  return json{{"rate", n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0},
              {"ci_low", ci.low},
              {"ci_high", ci.high},
              {"n", n}};
}

json spec_json(const DistributionSpec& spec) {
  json j;
  for (const auto& [k, val] : to_config(spec)) j[k] = val;
  j["description"] = describe(spec);
  return j;
}

Output run_thm2(const Params& p, uint64_t seed, int workers) {
  Thm2Config cfg;
  cfg.spec = spec_of(p);
  cfg.gt = truth_of(p);
  cfg.C = region_of(p, cfg.spec);
  cfg.rho = p.real("rho");
  cfg.eta = p.real("eta");
  cfg.delta = p.real("delta");
  cfg.trials = static_cast<int>(p.integer("trials"));
  cfg.seed = seed;
  cfg.norm = p.norm();
  if (p.has("cover_radius")) cfg.cover_radius = p.real("cover_radius");
  cfg.mc = McOptions{p.count("mc_samples"), derive_seed(seed, 0xC0FFEE)};
  const Thm2Result r = run_thm2_experiment(cfg, workers);

  Output out;
  std::size_t wins = 0;
  json trials = json::array();
  for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
    const Thm2Trial& tr = r.per_trial[t];
    wins += tr.success ? 1 : 0;
    trials.push_back(json{{"m", tr.m},
                          {"flipped", tr.flipped},
                          {"proxy_risk", tr.proxy_risk.value},
                          {"success", tr.success}});
    out.plot.push_back({"proxy_risk", static_cast<double>(t), tr.proxy_risk.value,
                        tr.proxy_risk.ci_low, tr.proxy_risk.ci_high});
  }
  out.plot.push_back({"guaranteed_risk", 0.0, r.bound.guaranteed_risk, r.bound.guaranteed_risk,
                      r.bound.guaranteed_risk});
  // Risk-versus-budget curve of the first trial's dataset.
  json curve = json::array();
  {
    const NoisyDataset ds = make_dataset(cfg.spec, cfg.gt, r.bound.m_required,
                                         UniformNoise{cfg.eta}, derive_seed(cfg.seed, 0));
    const auto flips = mislabeled_points(ds);
    for (int k = 1; k <= 8; ++k) {
      const double budget = cfg.rho * k / 4.0;
      const Estimate e = proxy_adversarial_risk(flips, cfg.spec, cfg.gt,
                                                AttackBudget{budget, cfg.norm, 1}, cfg.mc);
      curve.push_back(json{{"rho", budget}, {"proxy_risk", to_json(e)}});
      out.plot.push_back({"proxy_risk_vs_budget", budget, e.value, e.ci_low, e.ci_high});
    }
  }
  out.result = json{
      {"experiment", "thm2"},
      {"distribution", spec_json(cfg.spec)},
      {"ground_truth", describe(cfg.gt)},
      {"region", p.text("region")},
      {"bound",
       json{{"m_required", r.bound.m_required},
            {"N", r.bound.N},
            {"mu_C", r.bound.mu_C},
            {"eta", r.bound.eta},
            {"delta", r.bound.delta},
            {"guaranteed_risk", r.bound.guaranteed_risk}}},
      {"cover_radius", r.cover_radius},
      {"attack_radius", cfg.rho},
      {"mu_C", to_json(r.mu_C)},
      {"success_rate", r.success_rate},
      {"success", rate_json(wins, r.per_trial.size())},
      {"target_rate", 1.0 - cfg.delta},
      {"risk_vs_budget_trial0", curve},
      {"per_trial", trials},
  };
  return out;
}

Output run_sphere(const Params& p, uint64_t seed, int) {
  SphereConfig cfg;
  cfg.d = static_cast<int>(p.integer("dim"));
  cfg.rho = p.real("rho");
  cfg.eta = p.real("eta");
  cfg.n_test = p.count("n_test");
  cfg.n_directions = static_cast<int>(p.integer("n_directions"));
  cfg.seed = seed;
  if (p.has("m")) cfg.m = p.count("m");
  cfg.min_distance = p.flag("min_distance");
  const SphereResult r = run_sphere_experiment(cfg);
  Output out;
  json seeds = json::array();
  std::size_t above = 0;
  const int extra = static_cast<int>(p.integer("distance_seeds"));
  for (int k = 0; k < extra; ++k) {
    const uint64_t s = derive_seed(seed, 1000 + static_cast<uint64_t>(k));
    const double md = sphere_sample_min_distance(cfg.d, r.m, cfg.eta, s);
    above += md > 2.0 * cfg.rho ? 1 : 0;
    seeds.push_back(json{{"seed_index", k}, {"min_distance", md}, {"exceeds_2rho", md > 2.0 * cfg.rho}});
    out.plot.push_back({"min_pairwise_distance", static_cast<double>(k), md, md, md});
  }
  const uint64_t vulnerable = static_cast<uint64_t>(std::llround(r.mc_risk.value * r.mc_risk.n));
  out.plot.push_back({"mc_risk", cfg.rho, r.mc_risk.value, r.mc_risk.ci_low, r.mc_risk.ci_high});
  out.plot.push_back({"analytic_bound", cfg.rho, r.analytic_bound.value, r.analytic_bound.value,
                      r.analytic_bound.value});
  out.plot.push_back({"crude_bound", cfg.rho, r.analytic_bound.crude, r.analytic_bound.crude,
                      r.analytic_bound.crude});
  out.result = json{
      {"experiment", "sphere"},
      {"d", cfg.d},
      {"rho", cfg.rho},
      {"eta", cfg.eta},
      {"m", r.m},
      {"flipped", r.flipped},
      {"n_test", cfg.n_test},
      {"vulnerable_points", vulnerable},
      {"mc_risk", to_json(r.mc_risk)},
      {"analytic_bound", json{{"value", r.analytic_bound.value}, {"crude", r.analytic_bound.crude}}},
      {"min_pairwise_distance", r.min_pairwise_distance ? json(*r.min_pairwise_distance) : json(nullptr)},
      {"distance_seeds", seeds},
      {"distance_seeds_above_2rho", extra > 0 ? rate_json(above, static_cast<std::size_t>(extra)) : json(nullptr)},
  };
  return out;
}

Output run_game(const Params& p, uint64_t seed, int workers) {
  GameConfig cfg;
  cfg.spec = spec_of(p);
  cfg.gt = truth_of(p);
  cfg.rho = p.real("rho");
  cfg.eta = p.real("eta");
  cfg.m = p.count("m");
  cfg.delta = p.real("delta");
  cfg.norm = p.norm();
  if (p.has("candidate_step")) cfg.candidate_step = p.real("candidate_step");
  cfg.mc_samples = p.count("mc_samples");
  cfg.mc_seed = derive_seed(seed, 0xBEEF);
  const GameSummary g = play_game(cfg, static_cast<int>(p.integer("trials")), seed, workers);
  Output out;
  json trials = json::array();
  std::size_t wins = 0;
  for (std::size_t t = 0; t < g.results.size(); ++t) {
    const GameResult& r = g.results[t];
    wins += r.inequality_holds ? 1 : 0;
    trials.push_back(json{{"T", r.T},
                          {"flipped", r.flipped},
                          {"r_unif", to_json(r.r_unif)},
                          {"r_unif_rho", r.r_unif_rho.value},
                          {"inequality_holds", r.inequality_holds}});
    out.plot.push_back({"r_unif_2rho", static_cast<double>(t), r.r_unif.value, r.r_unif.ci_low,
                        r.r_unif.ci_high});
  }
  out.plot.push_back({"half_r_poison", 0.0, g.poisoner.r_poison / 2, g.poisoner.r_poison / 2,
                      g.poisoner.r_poison / 2});
  json pts = json::array();
  for (const Point& q : g.poisoner.points) pts.push_back(point_json(q));
  out.result = json{
      {"experiment", "poison-game"},
      {"distribution", spec_json(cfg.spec)},
      {"ground_truth", describe(cfg.gt)},
      {"rho", cfg.rho},
      {"eta", cfg.eta},
      {"m", cfg.m},
      {"delta", cfg.delta},
      {"N", g.N},
      {"T", g.T},
      {"r_poison", g.poisoner.r_poison},
      {"r_poison_exact", g.poisoner.exact},
      {"poison_points", pts},
      {"success_rate", g.success_rate},
      {"success", rate_json(wins, g.results.size())},
      {"trials", trials},
  };
  return out;
}

json longtail_json(const LongTailReport& r) {
  json trials = json::array();
  for (const LongTailTrial& t : r.per_trial) {
    trials.push_back(json{{"d1_proxy", t.d1_proxy},
                          {"d2_risk", t.d2_risk},
                          {"d2_eps_part", t.d2_eps_part},
                          {"d1_flips", t.d1_flips},
                          {"d2_flips", t.d2_flips},
                          {"d2_head_flips", t.d2_head_flips},
                          {"interpolates", t.interpolates}});
  }
  return json{{"A", r.A},
              {"B", r.B},
              {"eta", r.eta},
              {"rho", r.rho},
              {"delta", r.delta},
              {"m_used", r.m_used},
              {"risk_D1", to_json(r.risk_D1)},
              {"risk_D2", to_json(r.risk_D2)},
              {"d1_threshold", r.d1_threshold},
              {"d2_bound", r.d2_bound},
              {"d1_success_rate", r.d1_success_rate},
              {"d2_success_rate", r.d2_success_rate},
              {"per_trial", trials}};
}

Output run_longtail_exp(const Params& p, uint64_t seed, int workers) {
  LongTailConfig cfg;
  cfg.A = static_cast<int>(p.integer("A"));
  cfg.B = static_cast<int>(p.integer("B"));
  cfg.eta = p.real("eta");
  cfg.rho = p.real("rho");
  cfg.delta = p.real("delta");
  cfg.trials = static_cast<int>(p.integer("trials"));
  cfg.epsilon = p.real("epsilon");
  cfg.seed = seed;
  if (p.has("m")) cfg.m_override = p.count("m");
  Output out;
  const LongTailReport r = run_longtail(cfg, workers);
  out.result = longtail_json(r);
  out.result["experiment"] = "longtail";
  for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
    const auto x = static_cast<double>(t);
    out.plot.push_back({"d1_proxy", x, r.per_trial[t].d1_proxy, r.per_trial[t].d1_proxy,
                        r.per_trial[t].d1_proxy});
    out.plot.push_back({"d2_risk", x, r.per_trial[t].d2_risk, r.per_trial[t].d2_risk,
                        r.per_trial[t].d2_risk});
  }
  if (p.has("scaling_B")) {
    std::vector<int> Bs;
    for (int64_t b : p.int_list("scaling_B")) Bs.push_back(static_cast<int>(b));
    const LongTailScaling s = run_longtail_scaling(cfg, Bs, workers);
    json reps = json::array();
    for (std::size_t i = 0; i < s.reports.size(); ++i) {
      const MeanSummary& d2 = s.reports[i].risk_D2;
      out.plot.push_back({"mean_d2_vs_B", s.B[i], d2.mean, d2.ci_low, d2.ci_high});
      reps.push_back(json{{"B", s.B[i]},
                          {"m_used", s.reports[i].m_used},
                          {"risk_D2", to_json(d2)},
                          {"risk_D1", to_json(s.reports[i].risk_D1)}});
    }
    out.result["scaling"] = json{{"B", s.B}, {"mean_d2", s.mean_d2}, {"slope", s.slope}, {"reports", reps}};
  }
  return out;
}

Output run_tshape_exp(const Params& p, uint64_t seed, int workers) {
  TShapeConfig cfg;
  cfg.W = p.real("W");
  cfg.rho = p.real("rho");
  cfg.gamma = p.real("gamma");
  cfg.eta = p.real("eta");
  cfg.m = p.count("m");
  cfg.trials = static_cast<int>(p.integer("trials"));
  cfg.seed = seed;
  const TShapeReport r = run_tshape(cfg, workers);
  Output out;
  for (const auto& [name, s] : {std::pair{"risk_F", r.risk_F}, std::pair{"risk_H", r.risk_H},
                                std::pair{"risk_H_label0", r.risk_H_label0},
                                std::pair{"risk_H_verbatim", r.risk_H_verbatim}}) {
    out.plot.push_back({name, cfg.gamma, s.mean, s.ci_low, s.ci_high});
  }
  out.plot.push_back({"F_bound", cfg.gamma, r.F_bound, r.F_bound, r.F_bound});
  out.plot.push_back({"H_bound", cfg.gamma, r.H_bound, r.H_bound, r.H_bound});
  out.result = json{
      {"experiment", "tshape"},
      {"W", r.W},
      {"rho", r.rho},
      {"gamma", r.gamma},
      {"eta", r.eta},
      {"m", r.m},
      {"trials", r.trials},
      {"risk_F", to_json(r.risk_F)},
      {"risk_H", to_json(r.risk_H)},
      {"risk_H_label0", to_json(r.risk_H_label0)},
      {"risk_H_verbatim", to_json(r.risk_H_verbatim)},
      {"F_bound", r.F_bound},
      {"H_bound", r.H_bound},
      {"risk_H_lower", r.H_bound},
      {"F_within_bound", r.risk_F.mean - 1.96 * r.risk_F.std_error <= r.F_bound},
      {"H_above_0.9_bound", r.risk_H.mean >= 0.9 * r.H_bound},
      {"ratio_F_over_H", r.ratio_F_over_H},
      {"rho_over_gamma", r.rho / r.gamma},
      {"interpolation_failures", r.interpolation_failures},
  };
  return out;
}

Output run_subcover_demo(const Params& p, uint64_t seed, int) {
  const DistributionSpec spec = spec_of(p);
  const auto centers = sample(spec, p.count("n_balls"), derive_seed(seed, 0));
  std::vector<Ball> balls;
  for (const Point& c : centers) balls.push_back(Ball{c, p.real("radius"), p.norm()});
  const WeightedBallSet w =
      weigh_balls(spec, balls, McOptions{p.count("mc_samples"), derive_seed(seed, 1)});
  const double alpha = p.real("alpha");
  const SubcoverResult r = greedy_subcover(w, alpha);
  Output out;
  std::vector<double> sorted = w.masses;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.plot.push_back({"mass_by_rank", static_cast<double>(i), sorted[i], sorted[i], sorted[i]});
  }
  const double thr = alpha / static_cast<double>(w.size()) * w.union_mass;
  out.plot.push_back({"threshold", 0.0, thr, thr, thr});
  json centers_j = json::array();
  for (const Point& c : centers) centers_j.push_back(point_json(c));
  out.result = json{
      {"experiment", "subcover-demo"},
      {"distribution", spec_json(spec)},
      {"radius", p.real("radius")},
      {"alpha", alpha},
      {"centers", centers_j},
      {"masses", w.masses},
      {"union_mass", w.union_mass},
      {"selected", r.selected},
      {"selected_union_mass", r.selected_union_mass},
      {"min_selected_mass", r.min_selected_mass},
      {"union_condition", r.selected_union_mass >= (1.0 - alpha) * w.union_mass},
      {"mass_condition", r.min_selected_mass >= thr},
  };
  return out;
}

Output run_optimize_c(const Params& p, uint64_t, int) {
  const DistributionSpec spec = spec_of(p);
  std::optional<double> side;
  if (p.has("cell_side")) side = p.real("cell_side");
  const OptimizeCResult r = optimize_C_greedy(spec, p.real("rho"), p.real("r_target"), side);
  Output out;
  json classes = json::array();
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const CellClass& c = r.classes[i];
    classes.push_back(json{{"mass", c.mass}, {"count", c.count}, {"taken", c.taken}, {"description", c.description}});
    out.plot.push_back({"class_mass", static_cast<double>(i), c.mass, c.mass, c.mass});
  }
  json cells = nullptr;
  if (r.cells) {
    cells = json::array();
    for (const Ball& b : *r.cells) cells.push_back(point_json(b.center));
  }
  out.plot.push_back({"objective", p.real("r_target"), r.objective, r.objective, r.objective});
  out.result = json{
      {"experiment", "optimize-c"},
      {"distribution", spec_json(spec)},
      {"rho", p.real("rho")},
      {"r_target", p.real("r_target")},
      {"cell_side", r.cell_side},
      {"N", r.N},
      {"mu_C", r.mass},
      {"objective", r.objective},
      {"cell_centers", cells},
      {"classes", classes},
  };
  return out;
}

Output run_distances(const Params& p, uint64_t seed, int) {
  const DistributionSpec spec = spec_of(p);
  const GroundTruth gt = truth_of(p);
  const NoisyDataset ds =
      make_dataset(spec, gt, p.count("n"), UniformNoise{p.real("eta")}, derive_seed(seed, 0));
  std::vector<Point> pts;
  std::vector<Label> labels;
  for (const LabeledItem& it : ds.items) {
    pts.push_back(it.x);
    labels.push_back(it.y);
  }
  const ClassDistances h =
      class_distance_histograms(pts, labels, p.norm(), static_cast<int>(p.integer("bins")));
  Output out;
  for (const auto& [name, hist] : {std::pair{"intra", &h.intra}, std::pair{"inter", &h.inter}}) {
    for (std::size_t b = 0; b < hist->counts.size(); ++b) {
      const double c = static_cast<double>(hist->counts[b]);
      out.plot.push_back({name, 0.5 * (hist->edges[b] + hist->edges[b + 1]), c, c, c});
    }
  }
  std::ostringstream csv;
  write_histogram_csv(h, csv);
  out.files.emplace_back("histogram.csv", csv.str());
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  out.result = json{
      {"experiment", "distances"},
      {"distribution", spec_json(spec)},
      {"n", ds.size()},
      {"flipped", ds.flipped_count()},
      {"intra_pairs", h.intra.total()},
      {"inter_pairs", h.inter.total()},
      {"min_intra", opt(h.min_intra)},
      {"min_inter", opt(h.min_inter)},
  };
  return out;
}

using Runner = Output (*)(const Params&, uint64_t, int);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> r = {
      {"thm2", run_thm2},           {"sphere", run_sphere},
      {"poison-game", run_game},    {"longtail", run_longtail_exp},
      {"tshape", run_tshape_exp},   {"subcover-demo", run_subcover_demo},
      {"optimize-c", run_optimize_c}, {"distances", run_distances},
  };
  return r;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "." + std::to_string(i), rows);
    }
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

Output compute(const ExperimentConfig& config) {
  const Params params(resolved_parameters(config));
  const uint64_t seed = derive_seed(config.seed, fnv1a(config.experiment));
  return runners().at(config.experiment)(params, seed, config.workers);
}

std::string serialize_result(const ExperimentConfig& config, const Output& out) {
  if (config.format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(out.result, "", rows);
    std::ostringstream os;
    write_flat_csv(rows, os);
    return os.str();
  }
  return out.result.dump(2) + "\n";
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : schemas()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<Violation> validate(const ExperimentConfig& config) {
  std::vector<Violation> v;
  auto it = schemas().find(config.experiment);
  if (it == schemas().end()) {
    std::string all;
    for (const auto& n : experiment_names()) all += (all.empty() ? "" : ", ") + n;
    v.push_back({"experiment", "unknown experiment '" + config.experiment + "'; expected one of " + all});
    return v;
  }
  if (config.format != "json" && config.format != "csv") {
    v.push_back({"format", "expected csv or json"});
  }
  if (config.workers < 1) v.push_back({"workers", "workers must be >= 1"});
  const Schema& schema = it->second;
  for (const auto& [key, value] : config.parameters) {
    const bool known = std::any_of(schema.fields.begin(), schema.fields.end(),
                                   [&](const Field& f) { return f.name == key; });
    if (!known) v.push_back({key, "unknown parameter for experiment " + config.experiment});
  }
  const KeyValues resolved = resolved_parameters(config);
  for (const Field& f : schema.fields) {
    auto kv = resolved.find(f.name);
    if (kv != resolved.end()) check_field(f, kv->second, v);
  }
  if (v.empty() && schema.cross) schema.cross(Params(resolved), v);
  return v;
}

KeyValues resolved_parameters(const ExperimentConfig& config) {
  const Schema& schema = schemas().at(config.experiment);
  KeyValues out;
  for (const Field& f : schema.fields) {
    auto it = config.parameters.find(f.name);
    if (it != config.parameters.end()) {
      out[f.name] = it->second;
    } else if (!f.fallback.empty()) {
      out[f.name] = f.fallback;
    }
  }
  return out;
}

std::string describe_schema(const std::string& experiment) {
  const Schema& schema = schemas().at(experiment);
  std::ostringstream os;
  for (const Field& f : schema.fields) {
    os << "  " << std::left << std::setw(16) << f.name << " "
       << std::setw(10) << (f.fallback.empty() ? "(unset)" : f.fallback) << " " << f.help;
    const std::string r = range_text(f);
    if (!r.empty()) os << " [" << r << "]";
    os << "\n";
  }
  return os.str();
}

KeyValues parse_config(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void write_plot_csv(const std::vector<PlotRow>& rows, std::ostream& out) {
  out << "series,x,y,y_lo,y_hi\n";
  const auto old = out.precision(17);
  for (const PlotRow& r : rows) {
    out << csv_escape(r.series) << ',' << r.x << ',' << r.y << ',' << r.y_lo << ',' << r.y_hi
        << '\n';
  }
  out.precision(old);
}

std::vector<PlotRow> read_plot_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "series,x,y,y_lo,y_hi") {
    throw std::invalid_argument("plot CSV: bad header");
  }
  std::vector<PlotRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw std::invalid_argument("plot CSV: expected 5 fields");
    PlotRow r;
    r.series = f[0];
    double* dst[] = {&r.x, &r.y, &r.y_lo, &r.y_hi};
    for (int k = 0; k < 4; ++k) {
      auto v = parse_real(f[static_cast<std::size_t>(k) + 1]);
      if (!v) throw std::invalid_argument("plot CSV: bad number '" + f[static_cast<std::size_t>(k) + 1] + "'");
      *dst[k] = *v;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_flat_csv(const std::vector<std::pair<std::string, std::string>>& rows,
                    std::ostream& out) {
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << csv_escape(k) << ',' << csv_escape(v) << '\n';
}

std::vector<std::pair<std::string, std::string>> read_flat_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "key,value") {
    throw std::invalid_argument("result CSV: bad header");
  }
  std::vector<std::pair<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw std::invalid_argument("result CSV: expected 2 fields");
    rows.emplace_back(f[0], f[1]);
  }
  return rows;
}

std::string result_payload(const ExperimentConfig& config) {
  const auto v = validate(config);
  if (!v.empty()) throw std::invalid_argument(v.front().field + ": " + v.front().message);
  const Output out = compute(config);
  std::ostringstream plot;
  write_plot_csv(out.plot, plot);
  std::string payload = serialize_result(config, out) + plot.str();
  for (const auto& [name, content] : out.files) payload += content;
  return payload;
}

RunOutcome run(const ExperimentConfig& config) {
  RunOutcome outcome;
  const auto violations = validate(config);
  if (!violations.empty()) {
    outcome.exit_code = 1;
    for (const Violation& v : violations) outcome.message += "invalid " + v.field + ": " + v.message + "\n";
    return outcome;
  }
  const auto start = std::chrono::steady_clock::now();
  const std::string started_at = utc_now();
  Output out;
  try {
    out = compute(config);
  } catch (const std::overflow_error& e) {
    outcome.exit_code = 2;
    outcome.message = std::string("numeric overflow: ") + e.what() + "\n";
    return outcome;
  } catch (const std::exception& e) {
    outcome.exit_code = 2;
    outcome.message = std::string("runtime error: ") + e.what() + "\n";
    return outcome;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    std::filesystem::create_directories(config.output_dir);
    auto write = [&](const std::string& name, const std::string& content) {
      const auto path = config.output_dir / name;
      std::ofstream f(path, std::ios::binary);
      f << content;
      if (!f) throw std::runtime_error("cannot write " + path.string());
      outcome.files.push_back(path);
    };
    write(config.format == "csv" ? "result.csv" : "result.json", serialize_result(config, out));
    std::ostringstream plot;
    write_plot_csv(out.plot, plot);
    write("plot.csv", plot.str());
    for (const auto& [name, content] : out.files) write(name, content);
    json params;
    for (const auto& [k, v] : resolved_parameters(config)) params[k] = v;
    json files = json::array();
    for (const auto& f : outcome.files) files.push_back(f.filename().string());
    const json manifest{
        {"experiment", config.experiment},
        {"seed", config.seed},
        {"experiment_seed", derive_seed(config.seed, fnv1a(config.experiment))},
        {"format", config.format},
        {"workers", config.workers},
        {"output_dir", config.output_dir.string()},
        {"parameters", params},
        {"version", kVersion},
        {"compiler", __VERSION__},
        {"cxx_standard", static_cast<long>(__cplusplus)},
        {"started_at", started_at},
        {"wall_time_seconds", wall},
        {"files", files},
    };
    write("manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    outcome.exit_code = 2;
    outcome.message = std::string("output error: ") + e.what() + "\n";
    return outcome;
  }
  outcome.message = "wrote " + std::to_string(outcome.files.size()) + " files to " +
                    config.output_dir.string() + "\n";
  return outcome;
}

}  // namespace advrisk::harness
