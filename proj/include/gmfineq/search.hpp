#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmfineq/inequalities.hpp"

namespace gmfineq {

enum class ExponentRole {
  None,      // no exponent (pairwise, subset_weights, ...)
  Exponent,  // r, p or q taken from the grid
  Integer,   // tensor power, taken from the grid and rounded
};

/// Registry entry for an inequality evaluable by the harness.
struct InequalityInfo {
  std::string_view id;
  std::size_t min_m;
  std::size_t max_m;
  ExponentRole exponent;
  bool accepts_phi;
  bool needs_phi;
  bool uses_levels;
  bool uses_partition;
  bool uses_spec;
};

const std::vector<InequalityInfo>& registered_inequalities();
/// Accepts registered ids and the alias "theorem2_1" for three_term_power.
/// Throws UnknownId.
const InequalityInfo& inequality_info(std::string_view id);

/// Explicit list of exponents.
struct RGrid {
  std::vector<double> values;

  /// min + i * step for i = 0, 1, ... while <= max (with 1e-9 step slack).
  /// Throws InvalidArgument unless min > 0, step > 0, max >= min.
  static RGrid range(double min, double max, double step);
  static RGrid list(std::vector<double> values);
};

struct SearchConfig {
  std::string inequality_id = "three_term_power";
  GmfSpec spec = GmfSpec::det(2);
  /// n must equal spec.degree() for spec-based inequalities.
  RandomInstanceConfig instance;
  RGrid r_grid = RGrid::list({2.0});
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  Levels levels;
  std::optional<std::string> phi;
  /// 0-based masks; empty means all singletons.
  std::vector<SubsetMask> partition;
  /// 0 picks hardware concurrency.
  unsigned threads = 1;
  /// Inject the known extremal instance as trial 0 when one applies.
  bool inject_known = true;
};

struct TrialReport {
  std::size_t trial = 0;
  SlackReport report;
};

struct Violation {
  std::size_t trial = 0;
  SlackReport report;
  std::vector<Matrix> instance;
};

struct SearchResult {
  SlackReport worst;
  std::vector<Violation> violations;
  std::size_t evaluated = 0;
  /// Seconds; excluded from serialized output so reruns compare equal.
  double wall_time = 0.0;
  /// Every evaluation, ordered by (trial, grid index).
  std::vector<TrialReport> reports;
};

/// Throws InvalidArgument / UnknownId / BadArity / BadLevels / BadPartition
/// for inconsistent configurations, before any computation.
void validate(const SearchConfig& config);

/// Instance for trial t: the injected known instance (t = 0, when
/// applicable) or random_psd with seed substream_seed(config.seed, t).
std::vector<PsdMatrix> trial_instance(const SearchConfig& config, std::size_t trial);

/// All grid evaluations of the configured inequality on one instance.
std::vector<SlackReport> evaluate_instance(const SearchConfig& config, std::span<const PsdMatrix> instance);

/// Seeded trials, optionally on several threads; the result does not depend
/// on scheduling.
SearchResult random_search(const SearchConfig& config);

/// One report per grid point on a fixed instance (single trial).
SearchResult scan_r(const SearchConfig& config, std::span<const PsdMatrix> instance);

/// eg2_2, eg2_3, finite_diff, majorization_gap. Throws ReproductionError
/// when a claim fails and UnknownId for other ids.
SearchResult reproduce(std::string_view example_id);
std::vector<std::string> reproducible_examples();

/// A = B = [[1,1],[1,1]], C = x [[1,-1],[-1,1]].
std::vector<PsdMatrix> sharpness_instance(double x = 0.17);
/// m copies of the 1x1 identity.
std::vector<PsdMatrix> scalar_instance(std::size_t m);

}  // namespace gmfineq
