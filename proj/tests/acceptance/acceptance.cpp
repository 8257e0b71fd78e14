// Acceptance checks: one PASS/FAIL line per criterion.
//   acceptance               run all criteria
//   acceptance --criterion N run criterion N only
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "gmfineq/error.hpp"
#include "gmfineq/majorization.hpp"
#include "gmfineq/random.hpp"
#include "gmfineq/search.hpp"
#include "gmfineq/serialization.hpp"

using namespace gmfineq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t count_violations(const SearchResult& r) {
  return static_cast<std::size_t>(std::count_if(r.reports.begin(), r.reports.end(), [](const TrialReport& t) {
    return t.report.verdict == Verdict::Violated;
  }));
}

SearchConfig config(std::string id, GmfSpec spec, std::size_t n, std::size_t m, std::vector<double> r,
                    std::size_t trials, std::uint64_t seed) {
  SearchConfig cfg;
  cfg.inequality_id = std::move(id);
  cfg.spec = std::move(spec);
  cfg.instance.n = n;
  cfg.instance.m = m;
  if (!r.empty()) cfg.r_grid = RGrid::list(std::move(r));
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.threads = 0;
  return cfg;
}

// 1. Scalar three-term power slack equals 3^r + 3 - 3 * 2^r.
Outcome criterion1() {
  Outcome o;
  const auto ones = scalar_instance(3);
  double worst_err = 0.0;
  for (double r : {1.0, 1.25, 1.5, 1.75, 2.0, 3.0}) {
    const double slack = slack_three_term_power(GmfSpec::det(1), ones[0], ones[1], ones[2], r).slack;
    const double closed = std::pow(3.0, r) + 3.0 - 3.0 * std::pow(2.0, r);
    worst_err = std::max(worst_err, std::abs(slack - closed));
    if (r == 1.0 || r == 2.0) o.require(std::abs(slack) <= 1e-12, "nonzero slack at r=" + fmt(r));
    if (r > 1.0 && r < 2.0) o.require(slack < 0.0, "nonnegative slack at r=" + fmt(r));
  }
  o.require(worst_err <= 1e-12, "closed form mismatch " + fmt(worst_err));
  o.detail = "max |slack - closed form| = " + fmt(worst_err) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 2. The 2x2 permanent instance at r = 1.4.
Outcome criterion2() {
  Outcome o;
  const double x = 0.17;
  const auto inst = sharpness_instance(x);
  const SubsetTable t(GmfSpec::per(2), inst);
  const double want_ab = 8.0;
  const double want_ac = (1 + x) * (1 + x) + (1 - x) * (1 - x);
  const double want_abc = (2 + x) * (2 + x) + (2 - x) * (2 - x);
  // masks: A = 1, B = 2, C = 4.
  const std::pair<SubsetMask, double> checks[] = {{3, want_ab}, {5, want_ac}, {6, want_ac}, {7, want_abc}, {1, 2.0}};
  double worst_err = 0.0;
  for (const auto& [mask, want] : checks) worst_err = std::max(worst_err, std::abs(t.value(mask) - want));
  o.require(worst_err <= 1e-12, "per closed forms off by " + fmt(worst_err));
  const double slack = slack_three_term_power(t, 1.4).slack;
  o.require(slack < -0.01, "slack " + fmt(slack) + " is not < -0.01");
  o.detail = "slack = " + fmt(slack) + ", max per error = " + fmt(worst_err) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 3. Three-term power inequality on random triples.
Outcome criterion3() {
  Outcome o;
  std::size_t evaluated = 0, violated = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const GmfSpec specs[] = {GmfSpec::det(n), GmfSpec::per(n),
                             GmfSpec::custom(trivial_character(cyclic_group(static_cast<int>(n))), "cyclic-trivial")};
    for (const auto& spec : specs) {
      const auto res = random_search(config("three_term_power", spec, n, 3, {1, 2, 2.7, 5}, 1000, 100 + n));
      evaluated += res.evaluated;
      const auto v = count_violations(res);
      violated += v;
      o.require(v == 0, std::to_string(v) + " violations for " + spec.id() + " n=" + std::to_string(n));
    }
  }
  o.detail = std::to_string(evaluated) + " evaluations, " + std::to_string(violated) + " violated" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 4. Nonnegative subset weights.
Outcome criterion4() {
  Outcome o;
  double lowest = 0.0;
  std::size_t instances = 0;
  for (std::size_t m = 3; m <= 5; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& spec : {GmfSpec::det(n), GmfSpec::per(n)}) {
        auto cfg = config("subset_weights", spec, n, m, {}, 500, 200 + 10 * m + n);
        cfg.instance.field = Field::Complex;
        const auto res = random_search(cfg);
        instances += res.evaluated;
        for (const auto& t : res.reports) {
          // lhs = min x_J, tolerance = 1e-8 * scale.
          lowest = std::min(lowest, t.report.lhs / t.report.tolerance * 1e-8);
          o.require(t.report.lhs >= -t.report.tolerance,
                    "negative weight " + fmt(t.report.lhs) + " for " + spec.id());
        }
      }
    }
  }
  o.detail = std::to_string(instances) + " instances, min x_J / scale = " + fmt(lowest) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 5. Alternating sums for m = 4 and the scalar sign pattern.
Outcome criterion5() {
  Outcome o;
  std::size_t evaluated = 0;
  for (const auto& spec : {GmfSpec::det(2), GmfSpec::per(2)}) {
    const auto res = random_search(config("alternating", spec, 2, 4, {1, 2, 3, 4.5}, 500, 500));
    evaluated += res.evaluated;
    const auto v = count_violations(res);
    o.require(v == 0, std::to_string(v) + " violations for " + spec.id());
  }
  auto scan_cfg = config("alternating", GmfSpec::det(1), 1, 4, {}, 1, 0);
  scan_cfg.r_grid = RGrid::range(1.0, 3.0, 0.05);
  const auto scan = scan_r(scan_cfg, scalar_instance(4));
  std::size_t negative = 0;
  for (const auto& t : scan.reports) {
    const auto& rep = t.report;
    const double r = std::get<double>(rep.params.at("r"));
    const bool interior = r > 2.0 + 1e-9 && r < 3.0 - 1e-9;
    if (interior) {
      ++negative;
      o.require(rep.slack < -rep.tolerance, "scalar slack not negative at r=" + fmt(r));
    } else {
      o.require(rep.slack >= -rep.tolerance, "scalar slack negative at r=" + fmt(r));
    }
    const double f = finite_difference_f(4, r);
    o.require(std::abs(rep.slack - f) <= 1e-10 * (1 + std::abs(f)), "scan differs from f(4, r) at r=" + fmt(r));
  }
  o.detail = std::to_string(evaluated) + " random evaluations; " + std::to_string(scan.reports.size()) +
             " scan points, " + std::to_string(negative) + " in (2,3)" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 6. Three-level averages, power and convex forms.
Outcome criterion6() {
  Outcome o;
  struct Case {
    std::size_t m;
    Levels levels;
  };
  // (m, p, l, k) = (3,3,2,1), (4,4,3,2), (5,4,3,1).
  const Case cases[] = {{3, {1, 2, 3}}, {4, {2, 3, 4}}, {5, {1, 3, 4}}};
  std::size_t evaluated = 0;
  for (const auto& c : cases) {
    for (const auto& spec : {GmfSpec::det(2), GmfSpec::per(2)}) {
      auto cfg = config("three_level", spec, 2, c.m, {2, 3.3}, 300, 600 + c.m);
      cfg.levels = c.levels;
      const auto res = random_search(cfg);
      evaluated += res.evaluated;
      const auto v = count_violations(res);
      o.require(v == 0, std::to_string(v) + " power-form violations, m=" + std::to_string(c.m) + " " + spec.id());
      for (const char* phi : {"x", "x^1.5", "exp"}) {
        auto ccfg = config("convex_three_level", spec, 2, c.m, {}, 300, 700 + c.m);
        ccfg.levels = c.levels;
        ccfg.phi = phi;
        const auto cres = random_search(ccfg);
        evaluated += cres.evaluated;
        const auto cv = count_violations(cres);
        o.require(cv == 0, std::to_string(cv) + " convex-form violations, m=" + std::to_string(c.m) + " " +
                               spec.id() + " phi=" + phi);
      }
    }
  }
  o.detail = std::to_string(evaluated) + " instance evaluations" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Matrix random_complex(std::size_t n, SplitMix64& rng) {
  Matrix a(n, n);
  for (auto& z : a.data()) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    z = {re, im};
  }
  return a;
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// 7. Engine cross-validation.
Outcome criterion7() {
  Outcome o;
  SplitMix64 rng(700);
  double worst_per = 0.0, worst_det = 0.0, worst_tensor = 0.0;
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int i = 0; i < 100; ++i) {
      const Matrix a = random_complex(n, rng);
      worst_per = std::max(worst_per, rel(permanent_ryser(a).raw, gmf_naive(GmfSpec::per(n), a).raw));
    }
    for (int i = 0; i < 100; ++i) {
      const Matrix a = random_complex(n, rng);
      worst_det = std::max(worst_det, rel(determinant(a).raw, gmf_naive(GmfSpec::det(n), a).raw));
    }
  }
  for (int n = 2; n <= 4; ++n) {
    const auto sym = symmetric_group(n);
    const auto c2 = make_group(closure(n, std::vector<Permutation>{Permutation::transposition(n, 0, 1)}));
    const GmfSpec specs[] = {GmfSpec::det(n), GmfSpec::per(n), GmfSpec::custom(trivial_character(cyclic_group(n))),
                             GmfSpec::custom(sign_character(c2))};
    RandomInstanceConfig cfg;
    cfg.n = static_cast<std::size_t>(n);
    cfg.m = 50;
    cfg.seed = 777 + static_cast<std::uint64_t>(n);
    cfg.field = Field::Complex;
    for (const auto& a : random_psd(cfg)) {
      for (const auto& spec : specs) {
        worst_tensor = std::max(worst_tensor, rel(gmf_tensor_oracle(spec, a.matrix()).raw, gmf_naive(spec, a.matrix()).raw));
      }
    }
  }
  o.require(worst_per <= 1e-10, "Ryser vs naive " + fmt(worst_per));
  o.require(worst_det <= 1e-10, "elimination vs naive " + fmt(worst_det));
  o.require(worst_tensor <= 1e-9, "tensor vs naive " + fmt(worst_tensor));
  o.detail = "max relative errors: per " + fmt(worst_per) + ", det " + fmt(worst_det) + ", tensor " +
             fmt(worst_tensor) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 8. Operator-level forms.
Outcome criterion8() {
  Outcome o;
  RandomInstanceConfig cfg;
  cfg.n = 2;
  cfg.m = 3;
  cfg.field = Field::Complex;
  double worst_two = INFINITY, worst_three = INFINITY, worst_mixed = INFINITY;
  for (std::uint64_t i = 0; i < 200; ++i) {
    cfg.seed = substream_seed(800, i);
    const auto inst = random_psd(cfg);
    worst_two = std::min(worst_two, slack_tensor_two(inst[0], inst[1], 2).slack);
    worst_three = std::min(worst_three, slack_tensor_three(inst[0], inst[1], inst[2], 2).slack);
    RandomInstanceConfig small = cfg;
    small.n = 1;
    small.seed = substream_seed(801, i);
    const auto s = random_psd(small);
    const std::vector<PsdMatrix> a = {s[0], inst[0]}, b = {s[1], inst[1]}, c = {s[2], inst[2]};
    const int powers[] = {1, 2};
    worst_mixed = std::min(worst_mixed, slack_tensor_product_three(a, b, c, powers).slack);
  }
  o.require(worst_two >= -1e-8, "two-term operator slack " + fmt(worst_two));
  o.require(worst_three >= -1e-8, "three-term operator slack " + fmt(worst_three));
  o.require(worst_mixed >= -1e-8, "mixed-size operator slack " + fmt(worst_mixed));
  o.detail = "min lambda: two " + fmt(worst_two) + ", three " + fmt(worst_three) + ", mixed (1,2) " +
             fmt(worst_mixed) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 9. The majorization pair and power-sum monotonicity.
Outcome criterion9() {
  Outcome o;
  for (int n = 2; n <= 4; ++n) {
    const double big = std::pow(3.0, n), small = std::pow(2.0, n);
    const std::vector<double> v = {big, 1, 1, 1}, u = {small, small, small, 0};
    const bool majorized = weak_majorizes(v, u);
    o.require(!majorized, "n=" + std::to_string(n) + ": (2^n,2^n,2^n,0) is weakly majorized by (3^n,1,1,1), margin " +
                              fmt(weak_majorization_margin(v, u)));
  }
  SplitMix64 rng(900);
  std::size_t checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 2 + rng.next() % 6;
    std::vector<double> v(len);
    for (auto& x : v) x = rng.uniform(0.0, 10.0);
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    for (auto& x : u) x *= rng.uniform(0.3, 1.0);
    const double t = rng.uniform(0.0, 0.5) * (u.front() - u.back());
    u.front() -= t / 2;
    u.back() += t / 2;
    if (!weak_majorizes(v, u)) {
      o.require(false, "constructed pair not weakly majorized");
      continue;
    }
    ++checked;
    for (double p : {1.0, 1.5, 2.0, 3.7}) {
      const double pu = power_sum(u, p), pv = power_sum(v, p);
      if (pu > pv * (1 + 1e-12) + 1e-12) o.require(false, "power sum increased at p=" + fmt(p));
    }
  }
  o.detail = std::to_string(checked) + " power-sum pairs checked" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 10. Byte-identical reruns of verify and search.
Outcome criterion10() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "gmfineq_acceptance_10";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--suite", "three_term_power", "--spec", "per", "--n", "2", "--r", "1.4", "2", "--trials", "200",
       "--seed", "42"},
      {"verify", "--suite", "alternating", "--spec", "det", "--n", "2", "--m", "4", "--r-range", "1", "3", "0.25",
       "--trials", "50", "--seed", "9", "--field", "complex"},
      {"verify", "--suite", "subset_weights", "--spec", "per", "--n", "3", "--m", "4", "--trials", "50", "--seed", "5"},
      {"verify", "--suite", "convex_three_level", "--spec", "det", "--n", "2", "--m", "3", "--phi", "exp",
       "--trials", "50", "--seed", "5"},
      {"verify", "--suite", "tensor_three", "--n", "2", "--r", "2", "--trials", "20", "--seed", "5"},
      {"search", "--suite", "three_term_power", "--spec", "per", "--n", "2", "--r-range", "1.1", "1.9", "0.1",
       "--trials", "300", "--seed", "123"},
      {"search", "--suite", "three_level", "--spec", "per", "--n", "2", "--m", "5", "--k", "1", "--l", "3", "--p",
       "4", "--r", "2", "--trials", "100", "--seed", "77"},
  };
  std::size_t index = 0;
  for (const auto& base : commands) {
    std::string first;
    for (const char* threads : {"1", "4", "1"}) {
      auto args = base;
      const std::string file = (dir / ("run_" + std::to_string(index) + "_" + threads + ".out")).string();
      args.insert(args.end(), {"--threads", threads, "--out", file});
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      if (code != cli::kOk && code != cli::kViolation) {
        o.require(false, base[0] + " " + base[2] + " exited " + std::to_string(code) + ": " + err.str());
        break;
      }
      const std::string text = read_text_file(file);
      if (first.empty()) {
        first = text;
        o.require(!first.empty(), base[2] + " wrote nothing");
      } else {
        o.require(text == first, base[0] + " " + base[2] + " differs between reruns");
      }
    }
    ++index;
  }
  fs::remove_all(dir);
  o.detail = std::to_string(commands.size()) + " commands, 3 runs each" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double time_limit;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "scalar three-term power closed form", 1.0, criterion1},
      {2, "2x2 permanent violation at r = 1.4", 1.0, criterion2},
      {3, "three-term power inequality, random triples", 60.0, criterion3},
      {4, "nonnegative subset weights", 60.0, criterion4},
      {5, "alternating sums and scalar sign pattern", 60.0, criterion5},
      {6, "three-level averages, power and convex", 120.0, criterion6},
      {7, "engine cross-validation", 60.0, criterion7},
      {8, "operator-level forms", 30.0, criterion8},
      {9, "majorization pair and power sums", 5.0, criterion9},
      {10, "byte-identical reruns", 600.0, criterion10},
  };
  return list;
}

bool run_one(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double elapsed = seconds_since(start);
  if (elapsed > c.time_limit) {
    o.pass = false;
    o.detail += "; took " + fmt(elapsed) + " s, limit " + fmt(c.time_limit) + " s";
  }
  std::printf("CRITERION %d %s: %s [%.2f s] %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, elapsed, o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool all = true;
  bool found = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    found = true;
    all = run_one(c) && all;
  }
  if (!found) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all ? 0 : 1;
}
