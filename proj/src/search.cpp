#include "gmfineq/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "gmfineq/error.hpp"
#include "gmfineq/majorization.hpp"
#include "gmfineq/random.hpp"

namespace gmfineq {

namespace {

using Role = ExponentRole;

// id, min_m, max_m, exponent, accepts_phi, needs_phi, levels, partition, spec
const std::vector<InequalityInfo> kRegistry = {
    {"two_term_power", 2, 2, Role::Exponent, false, false, false, false, true},
    {"root_superadditivity", 2, 2, Role::Exponent, false, false, false, false, true},
    {"det_root_power", 2, 2, Role::Exponent, false, false, false, false, false},
    {"three_term_basic", 3, 3, Role::Exponent, false, false, false, false, true},
    {"three_term_power", 3, 3, Role::Exponent, true, false, false, false, true},
    {"alternating", 2, kMaxSubsetMatrices, Role::Exponent, true, false, false, false, true},
    {"pairwise", 3, kMaxSubsetMatrices, Role::None, false, false, false, false, true},
    {"three_level", 3, kMaxSubsetMatrices, Role::Exponent, false, false, true, false, true},
    {"convex_three_level", 3, kMaxSubsetMatrices, Role::None, true, true, true, false, true},
    {"partition_schur", 1, kMaxSubsetMatrices, Role::Exponent, false, false, false, true, true},
    {"subset_weights", 1, kMaxSubsetMatrices, Role::None, false, false, false, false, true},
    {"tensor_two", 2, 2, Role::Integer, false, false, false, false, false},
    {"tensor_root", 2, 2, Role::None, false, false, false, false, false},
    {"tensor_three", 3, 3, Role::Integer, false, false, false, false, false},
};

const InequalityInfo& info_of(const SearchConfig& config) { return inequality_info(config.inequality_id); }

std::vector<SubsetMask> effective_partition(const SearchConfig& config) {
  if (!config.partition.empty()) return config.partition;
  std::vector<SubsetMask> singles;
  for (std::size_t i = 0; i < config.instance.m; ++i) singles.push_back(SubsetMask{1} << i);
  return singles;
}

bool uses_grid(const InequalityInfo& info, const SearchConfig& config) {
  return info.exponent != Role::None && !(info.accepts_phi && config.phi);
}

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

SlackReport pick_worst(const std::vector<TrialReport>& reports) {
  const auto it = std::min_element(reports.begin(), reports.end(), [](const TrialReport& a, const TrialReport& b) {
    return a.report.slack < b.report.slack;
  });
  return it->report;
}

std::vector<Matrix> as_matrices(std::span<const PsdMatrix> instance) {
  std::vector<Matrix> out;
  for (const auto& a : instance) out.push_back(a.matrix());
  return out;
}

void add_trial(SearchResult& result, std::size_t trial, std::vector<SlackReport> reports,
               std::span<const PsdMatrix> instance) {
  for (auto& rep : reports) {
    if (rep.verdict == Verdict::Violated) result.violations.push_back({trial, rep, as_matrices(instance)});
    result.reports.push_back({trial, std::move(rep)});
  }
}

void finish(SearchResult& result) {
  result.evaluated = result.reports.size();
  if (!result.reports.empty()) result.worst = pick_worst(result.reports);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void claim(bool ok, const std::string& what, double expected, double actual) {
  if (!ok) throw ReproductionError(what, expected, actual);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

SearchConfig scalar_scan(std::string id, std::size_t m, std::vector<double> grid) {
  SearchConfig cfg;
  cfg.inequality_id = std::move(id);
  cfg.spec = GmfSpec::det(1);
  cfg.instance.n = 1;
  cfg.instance.m = m;
  cfg.r_grid = RGrid::list(std::move(grid));
  return cfg;
}

SearchResult reproduce_eg2_2() {
  const std::vector<double> grid = {1.0, 1.25, 1.5, 1.75, 2.0, 3.0};
  SearchResult result = scan_r(scalar_scan("three_term_power", 3, grid), scalar_instance(3));
  for (const auto& [trial, rep] : result.reports) {
    const double r = std::get<double>(rep.params.at("r"));
    const double closed = std::pow(3.0, r) + 3.0 - 3.0 * std::pow(2.0, r);
    claim(std::abs(rep.slack - closed) <= 1e-12, "eg2_2: slack equals 3^r + 3 - 3*2^r at r=" + fmt(r), closed,
          rep.slack);
    if (r == 1.0 || r == 2.0) {
      claim(std::abs(rep.slack) <= 1e-12 && rep.verdict == Verdict::Equality, "eg2_2: f(r) = 0 at r=" + fmt(r), 0.0,
            rep.slack);
    } else if (r > 1.0 && r < 2.0) {
      claim(rep.slack < 0.0 && rep.verdict == Verdict::Violated, "eg2_2: f(r) < 0 at r=" + fmt(r), -1.0, rep.slack);
    }
  }
  return result;
}

SearchResult reproduce_eg2_3() {
  constexpr double x = 0.17;
  const auto inst = sharpness_instance(x);
  const GmfSpec per = GmfSpec::per(2);
  auto value = [&per](const Matrix& m) { return gmf_checked(per, m).value; };
  const Matrix& a = inst[0];
  const Matrix& b = inst[1];
  const Matrix& c = inst[2];
  struct Expect {
    const char* what;
    double actual;
    double expected;
  };
  const Expect expects[] = {
      {"per(A) = 2", value(a), 2.0},
      {"per(B) = 2", value(b), 2.0},
      {"per(A+B) = 8", value(a + b), 8.0},
      {"per(A+C) = (1+x)^2 + (1-x)^2", value(a + c), (1 + x) * (1 + x) + (1 - x) * (1 - x)},
      {"per(A+B+C) = (2+x)^2 + (2-x)^2", value(a + b + c), (2 + x) * (2 + x) + (2 - x) * (2 - x)},
  };
  for (const auto& e : expects) {
    claim(std::abs(e.actual - e.expected) <= 1e-12, std::string("eg2_3: ") + e.what, e.expected, e.actual);
  }
  SearchConfig cfg;
  cfg.inequality_id = "three_term_power";
  cfg.spec = per;
  cfg.r_grid = RGrid::list({1.4});
  SearchResult result = scan_r(cfg, inst);
  const SlackReport& rep = result.reports.front().report;
  claim(rep.slack < -0.01 && rep.verdict == Verdict::Violated, "eg2_3: slack < -0.01 at x=0.17, r=1.4", -0.01,
        rep.slack);
  return result;
}

SearchResult reproduce_finite_diff() {
  SearchResult result;
  for (std::size_t m = 3; m <= 5; ++m) {
    const int mi = static_cast<int>(m);
    // Expected sign of f(m, r) at each probe: zeros at 1..m-1, negative on
    // (m-2i, m-2i+1), positive on (m-2i-1, m-2i), positive beyond m-1.
    std::vector<std::pair<double, int>> probes;
    for (int j = 1; j <= mi - 1; ++j) probes.emplace_back(j, 0);
    for (int i = 1; i <= mi / 2; ++i) probes.emplace_back(mi - 2 * i + 0.5, -1);
    for (int i = 1; i <= (mi - 1) / 2; ++i) probes.emplace_back(mi - 2 * i - 0.5, 1);
    probes.emplace_back(mi - 0.5, 1);
    probes.emplace_back(mi + 0.5, 1);
    std::sort(probes.begin(), probes.end());
    std::vector<double> grid;
    for (const auto& pr : probes) grid.push_back(pr.first);
    const SearchResult scan = scan_r(scalar_scan("alternating", m, grid), scalar_instance(m));
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto& rep = scan.reports[i].report;
      const auto [r, sign] = probes[i];
      const double f = finite_difference_f(mi, r);
      const std::string where = "finite_diff: m=" + std::to_string(m) + " r=" + fmt(r);
      claim(std::abs(rep.slack - f) <= 1e-12 * (1.0 + std::abs(rep.lhs) + std::abs(rep.rhs)),
            where + " alternating sum equals f(m,r)", f, rep.slack);
      const bool ok = sign == 0 ? rep.verdict == Verdict::Equality
                                : (sign < 0 ? rep.verdict == Verdict::Violated : rep.verdict == Verdict::Holds);
      claim(ok, where + " sign", sign, rep.slack);
    }
    add_trial(result, m, [&] {
      std::vector<SlackReport> reps;
      for (const auto& tr : scan.reports) reps.push_back(tr.report);
      return reps;
    }(), scalar_instance(m));
  }
  finish(result);
  return result;
}

SearchResult reproduce_majorization_gap() {
  SearchResult result;
  for (std::size_t n = 2; n <= 4; ++n) {
    const PsdMatrix id = PsdMatrix::certify(Matrix::identity(n));
    const std::vector<PsdMatrix> inst(3, id);
    const SubsetTable t(GmfSpec::det(n), inst);
    const double v[] = {t.value(7), t.value(1), t.value(2), t.value(4)};
    const double u[] = {t.value(3), t.value(5), t.value(6), 0.0};
    const std::string where = "majorization_gap: n=" + std::to_string(n);
    claim(std::abs(v[0] - std::pow(3.0, n)) <= 1e-9 && std::abs(u[0] - std::pow(2.0, n)) <= 1e-9,
          where + " det(3I) = 3^n, det(2I) = 2^n", std::pow(3.0, n), v[0]);
    SlackReport rep = make_report("majorization_gap", t.spec_id(), {{"n", static_cast<std::int64_t>(n)}},
                                  weak_majorization_margin(v, u), 0.0, t.digest());
    add_trial(result, n, {rep}, inst);
    claim(!weak_majorizes(v, u),
          where + " (2^n,2^n,2^n,0) is not weakly majorized by (3^n,1,1,1) [1 = majorized]", 0.0, 1.0);
  }
  finish(result);
  return result;
}

}  // namespace

const std::vector<InequalityInfo>& registered_inequalities() { return kRegistry; }

const InequalityInfo& inequality_info(std::string_view id) {
  if (id == "theorem2_1") id = "three_term_power";
  for (const auto& info : kRegistry) {
    if (info.id == id) return info;
  }
  throw Error(ErrorCode::UnknownId, "unknown inequality '" + std::string(id) + "'");
}

RGrid RGrid::range(double min, double max, double step) {
  require(min > 0.0 && step > 0.0 && max >= min && std::isfinite(max), ErrorCode::InvalidArgument,
          "r grid needs min > 0, step > 0, max >= min");
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  require(count <= 1000000, ErrorCode::InvalidArgument, "r grid too fine");
  RGrid g;
  for (std::size_t i = 0; i < count; ++i) g.values.push_back(min + static_cast<double>(i) * step);
  return g;
}

RGrid RGrid::list(std::vector<double> values) {
  require(!values.empty(), ErrorCode::InvalidArgument, "r list must be nonempty");
  for (double r : values) require(r > 0.0 && std::isfinite(r), ErrorCode::InvalidArgument, "r values must be > 0");
  return RGrid{std::move(values)};
}

void validate(const SearchConfig& config) {
  const InequalityInfo& info = info_of(config);
  const std::size_t m = config.instance.m;
  require(m >= info.min_m && m <= info.max_m, ErrorCode::BadArity,
          std::string(info.id) + " takes between " + std::to_string(info.min_m) + " and " +
              std::to_string(info.max_m) + " matrices, got m=" + std::to_string(m));
  require(config.instance.n >= 1 && config.instance.scale > 0.0, ErrorCode::InvalidArgument,
          "instances need n >= 1 and scale > 0");
  require(config.trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
  if (info.uses_spec) {
    require(config.instance.n == config.spec.degree(), ErrorCode::DimensionMismatch,
            "spec " + config.spec.id() + " acts on size " + std::to_string(config.spec.degree()) + ", n=" +
                std::to_string(config.instance.n));
  }
  require(!config.r_grid.values.empty(), ErrorCode::InvalidArgument, "r grid is empty");
  for (double r : config.r_grid.values) {
    require(r > 0.0 && std::isfinite(r), ErrorCode::InvalidArgument, "r values must be > 0");
  }
  if (uses_grid(info, config) && info.exponent == Role::Integer) {
    for (double r : config.r_grid.values) {
      require(r == std::floor(r), ErrorCode::InvalidArgument, std::string(info.id) + " takes integer powers");
    }
  }
  if (config.phi) {
    require(info.accepts_phi, ErrorCode::InvalidArgument, std::string(info.id) + " does not take --phi");
    (void)convex_fn(*config.phi);
  }
  require(!info.needs_phi || config.phi.has_value(), ErrorCode::InvalidArgument, std::string(info.id) + " needs --phi");
  if (info.uses_levels) {
    const Levels& lv = config.levels;
    require(1 <= lv.k && lv.k < lv.l && lv.l < lv.p && static_cast<std::size_t>(lv.p) <= m, ErrorCode::BadLevels,
            "levels need 1 <= k < l < p <= m");
  }
  if (info.uses_partition) {
    const SubsetMask full = static_cast<SubsetMask>((std::size_t{1} << m) - 1);
    SubsetMask seen = 0;
    for (SubsetMask block : effective_partition(config)) {
      require(block != 0 && (block & ~full) == 0 && (block & seen) == 0, ErrorCode::BadPartition,
              "partition blocks must be nonempty, disjoint subsets of 1..m");
      seen |= block;
    }
    require(seen == full, ErrorCode::BadPartition, "partition must cover 1..m");
  }
  if (info.id == "det_root_power" || info.id == "tensor_root" || info.id == "tensor_two" ||
      info.id == "tensor_three") {
    return;
  }
  require(config.spec.degree() >= 1, ErrorCode::InvalidArgument, "spec degree must be >= 1");
}

std::vector<PsdMatrix> sharpness_instance(double x) {
  const Matrix ones = Matrix::constant(2, 1.0);
  const Matrix c = Matrix::from_rows({{x, -x}, {-x, x}});
  return {trusted_psd(ones), trusted_psd(ones), trusted_psd(c)};
}

std::vector<PsdMatrix> scalar_instance(std::size_t m) {
  return std::vector<PsdMatrix>(m, trusted_psd(Matrix::identity(1)));
}

std::vector<PsdMatrix> trial_instance(const SearchConfig& config, std::size_t trial) {
  if (trial == 0 && config.inject_known) {
    const std::string_view id = info_of(config).id;
    const GmfSpec& spec = config.spec;
    if (id == "three_term_power" && spec.kind() == GmfKind::Per && spec.degree() == 2) {
      return sharpness_instance();
    }
    if (spec.degree() == 1 && (id == "three_term_power" || id == "alternating" || id == "three_level")) {
      return scalar_instance(config.instance.m);
    }
  }
  RandomInstanceConfig rc = config.instance;
  rc.seed = substream_seed(config.seed, trial);
  return random_psd(rc);
}

std::vector<SlackReport> evaluate_instance(const SearchConfig& config, std::span<const PsdMatrix> inst) {
  const InequalityInfo& info = info_of(config);
  const std::string_view id = info.id;
  require(inst.size() >= info.min_m && inst.size() <= info.max_m, ErrorCode::BadArity,
          std::string(id) + ": wrong number of matrices");
  std::vector<SlackReport> out;
  const std::optional<ConvexFn> phi = config.phi ? std::optional<ConvexFn>(convex_fn(*config.phi)) : std::nullopt;

  if (id == "two_term_power" || id == "root_superadditivity" || id == "det_root_power" || id == "three_term_basic" ||
      id == "tensor_two" || id == "tensor_root" || id == "tensor_three") {
    const std::vector<double> grid = info.exponent == Role::None ? std::vector<double>{0.0} : config.r_grid.values;
    for (double r : grid) {
      const int k = static_cast<int>(std::lround(r));
      if (id == "two_term_power") out.push_back(slack_two_term_power(config.spec, inst[0], inst[1], r));
      if (id == "root_superadditivity") out.push_back(slack_root_superadditivity(config.spec, inst[0], inst[1], r));
      if (id == "det_root_power") out.push_back(slack_det_root_power(inst[0], inst[1], r));
      if (id == "three_term_basic") out.push_back(slack_three_term_basic(config.spec, inst[0], inst[1], inst[2], r));
      if (id == "tensor_two") out.push_back(slack_tensor_two(inst[0], inst[1], k));
      if (id == "tensor_root") out.push_back(slack_tensor_root(inst[0], inst[1]));
      if (id == "tensor_three") out.push_back(slack_tensor_three(inst[0], inst[1], inst[2], k));
    }
    return out;
  }

  const SubsetTable table(config.spec, inst);
  if (id == "pairwise") return {slack_pairwise(table)};
  if (id == "subset_weights") return {subset_weight_report(decompose_subset_weights(table), table)};
  if (id == "convex_three_level") return {slack_convex_three_level(table, config.levels, *phi)};
  if (phi && id == "three_term_power") return {slack_three_term_phi(table, *phi)};
  if (phi && id == "alternating") return {slack_alternating_phi(table, *phi)};
  const auto partition = effective_partition(config);
  for (double r : config.r_grid.values) {
    if (id == "three_term_power") out.push_back(slack_three_term_power(table, r));
    if (id == "alternating") out.push_back(slack_alternating(table, r));
    if (id == "three_level") out.push_back(slack_three_level(table, config.levels, r));
    if (id == "partition_schur") out.push_back(slack_partition_schur(table, partition, r));
  }
  return out;
}

SearchResult random_search(const SearchConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t trials = config.trials;
  std::vector<std::vector<SlackReport>> per_trial(trials);
  std::vector<std::exception_ptr> errors(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        per_trial[t] = evaluate_instance(config, trial_instance(config, t));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  // Lowest failing trial wins, independent of scheduling.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SearchResult result;
  for (std::size_t t = 0; t < trials; ++t) {
    const bool violated = std::any_of(per_trial[t].begin(), per_trial[t].end(),
                                      [](const SlackReport& r) { return r.verdict == Verdict::Violated; });
    if (violated) {
      add_trial(result, t, std::move(per_trial[t]), trial_instance(config, t));
    } else {
      add_trial(result, t, std::move(per_trial[t]), {});
    }
  }
  finish(result);
  result.wall_time = seconds_since(start);
  return result;
}

SearchResult scan_r(const SearchConfig& config, std::span<const PsdMatrix> instance) {
  SearchConfig single = config;
  single.instance.m = instance.size();
  single.trials = 1;
  validate(single);
  const auto start = std::chrono::steady_clock::now();
  SearchResult result;
  add_trial(result, 0, evaluate_instance(single, instance), instance);
  finish(result);
  result.wall_time = seconds_since(start);
  return result;
}

SearchResult reproduce(std::string_view example_id) {
  const auto start = std::chrono::steady_clock::now();
  SearchResult result;
  if (example_id == "eg2_2") {
    result = reproduce_eg2_2();
  } else if (example_id == "eg2_3") {
    result = reproduce_eg2_3();
  } else if (example_id == "finite_diff") {
    result = reproduce_finite_diff();
  } else if (example_id == "majorization_gap") {
    result = reproduce_majorization_gap();
  } else {
    throw Error(ErrorCode::UnknownId, "unknown example '" + std::string(example_id) + "'");
  }
  result.wall_time = seconds_since(start);
  return result;
}

std::vector<std::string> reproducible_examples() { return {"eg2_2", "eg2_3", "finite_diff", "majorization_gap"}; }

}  // namespace gmfineq
