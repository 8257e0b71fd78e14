#include "cli_app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <ostream>
#include <regex>
#include <sstream>

#include "gmfineq/error.hpp"
#include "gmfineq/search.hpp"
#include "gmfineq/serialization.hpp"

namespace gmfineq::cli {

namespace {

namespace fs = std::filesystem;

struct RunOptions {
  std::string suite;
  std::string spec = "det";
  std::size_t n = 2;
  std::size_t m = 0;
  std::vector<double> r;
  double r_min = 0.0;
  double r_max = 0.0;
  double r_step = 0.0;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string out;
  bool summary = false;
  int k = 1;
  int l = 2;
  int p = 3;
  std::string phi;
  std::string partition;
  std::string instance;
  unsigned threads = 1;
  std::string field = "real";
  double scale = 1.0;
  std::string violations_dir;

  // Which flags were given explicitly.
  CLI::Option* n_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* r_opt = nullptr;
  CLI::Option* range_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  std::vector<CLI::Option*> level_opts;

  bool levels_given() const {
    return std::any_of(level_opts.begin(), level_opts.end(), [](CLI::Option* opt) { return opt->count() > 0; });
  }
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// "det", "per", "cyclic[:k]", "custom:FILE"; products join factors with '*'
// and give each factor's size with '@', e.g. "det@1*per@2".
GmfSpec parse_single_spec(const std::string& text, std::size_t n) {
  if (text == "det") return GmfSpec::det(n);
  if (text == "per") return GmfSpec::per(n);
  if (text == "cyclic" || text.starts_with("cyclic:")) {
    int k = 0;
    if (text.size() > 7) {
      const auto* first = text.data() + 7;
      const auto* last = text.data() + text.size();
      const auto res = std::from_chars(first, last, k);
      if (res.ec != std::errc() || res.ptr != last) usage("bad cyclic spec '" + text + "'");
    }
    return GmfSpec::custom(cyclic_character(cyclic_group(static_cast<int>(n)), k), "cyclic:" + std::to_string(k));
  }
  if (text.starts_with("custom:")) {
    const fs::path file = text.substr(7);
    return GmfSpec::custom(character_from_json(read_json_file(file)), "custom:" + file.filename().string());
  }
  usage("unknown spec '" + text + "' (det, per, cyclic[:k], custom:FILE, or a*b products)");
}

GmfSpec parse_spec(const std::string& text, std::size_t n) {
  if (text.find('*') == std::string::npos && text.find('@') == std::string::npos) {
    return parse_single_spec(text, n);
  }
  std::vector<GmfSpec> factors;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '*')) {
    const auto at = part.rfind('@');
    if (at == std::string::npos) usage("product factors need a size, e.g. det@1*per@2");
    std::size_t size = 0;
    const auto* first = part.data() + at + 1;
    const auto* last = part.data() + part.size();
    const auto res = std::from_chars(first, last, size);
    if (res.ec != std::errc() || res.ptr != last || size < 1) usage("bad factor size in '" + part + "'");
    factors.push_back(parse_single_spec(part.substr(0, at), size));
  }
  if (factors.size() == 1) return factors.front();
  return GmfSpec::product(std::move(factors));
}

std::vector<SubsetMask> parse_partition(const std::string& text) {
  std::vector<SubsetMask> blocks;
  static const std::regex block(R"(\{([0-9,\s]*)\})");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), block); it != std::sregex_iterator(); ++it) {
    SubsetMask mask = 0;
    std::stringstream ss((*it)[1].str());
    std::string item;
    while (std::getline(ss, item, ',')) {
      const int idx = std::stoi(item);
      if (idx < 1 || idx > static_cast<int>(kMaxSubsetMatrices)) usage("partition indices run from 1 to m");
      mask |= SubsetMask{1} << (idx - 1);
    }
    blocks.push_back(mask);
  }
  if (blocks.empty()) usage("partition looks like {1},{2,3}");
  return blocks;
}

SearchConfig build_config(const RunOptions& o) {
  const InequalityInfo& info = inequality_info(o.suite);
  SearchConfig cfg;
  cfg.inequality_id = std::string(info.id);
  cfg.spec = parse_spec(o.spec, o.n);
  cfg.instance.n = info.uses_spec && !o.n_opt->count() ? cfg.spec.degree() : o.n;
  cfg.instance.m = o.m_opt->count() ? o.m : info.min_m;
  cfg.instance.scale = o.scale;
  cfg.instance.field = o.field == "complex" ? Field::Complex : Field::Real;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.levels = Levels{o.k, o.l, o.p};
  if (!o.phi.empty()) cfg.phi = o.phi;
  if (!o.partition.empty()) cfg.partition = parse_partition(o.partition);

  const bool grid_used = info.exponent != ExponentRole::None && !(info.accepts_phi && cfg.phi);
  const bool list_given = o.r_opt->count() > 0;
  const bool range_given = o.range_opt->count() > 0;
  if (grid_used) {
    if (list_given == range_given) usage(std::string(info.id) + " needs exactly one of --r or --r-range");
    cfg.r_grid = list_given ? RGrid::list(o.r) : RGrid::range(o.r_min, o.r_max, o.r_step);
  } else if (list_given || range_given) {
    usage(std::string(info.id) + (cfg.phi ? " with --phi" : "") + " takes no exponent");
  }
  if (!info.uses_levels && o.levels_given()) usage(std::string(info.id) + " takes no --k/--l/--p levels");
  if (!info.uses_partition && !o.partition.empty()) usage(std::string(info.id) + " takes no --partition");
  return cfg;
}

std::vector<PsdMatrix> load_instance(const std::string& path) {
  std::vector<PsdMatrix> out;
  for (const auto& a : instance_from_json(read_json_file(path))) out.push_back(PsdMatrix::certify(a));
  return out;
}

std::string report_lines(const SearchResult& result) {
  std::string text;
  for (const auto& tr : result.reports) {
    text += report_line(tr.report);
    text += '\n';
  }
  return text;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

SearchResult execute(const RunOptions& o, SearchConfig& cfg) {
  if (!o.instance.empty()) {
    const auto inst = load_instance(o.instance);
    cfg.instance.m = inst.size();
    cfg.instance.n = inst.front().size();
    return scan_r(cfg, inst);
  }
  if (!o.seed_opt->count()) usage("--seed is required (all randomness flows from it)");
  validate(cfg);
  return random_search(cfg);
}

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--suite", o.suite, "Inequality id")->required();
  cmd->add_option("--spec", o.spec, "det | per | cyclic[:k] | custom:FILE | products like det@1*per@2");
  o.n_opt = cmd->add_option("--n", o.n, "Matrix size")->check(CLI::Range(1, 64));
  o.m_opt = cmd->add_option("--m", o.m, "Number of matrices")->check(CLI::Range(1, 12));
  o.r_opt = cmd->add_option("--r", o.r, "Exponent values");
  o.range_opt = cmd->add_option_function<std::vector<double>>(
                       "--r-range",
                       [&o](const std::vector<double>& v) {
                         o.r_min = v[0];
                         o.r_max = v[1];
                         o.r_step = v[2];
                       },
                       "Exponent grid MIN MAX STEP")
                    ->expected(3);
  cmd->add_option("--trials", o.trials, "Random instances")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  o.seed_opt = cmd->add_option("--seed", o.seed, "Seed (required unless --instance)");
  cmd->add_option("--out", o.out, "Output file (written atomically)");
  o.level_opts = {cmd->add_option("--k", o.k, "Lowest level"), cmd->add_option("--l", o.l, "Middle level"),
                  cmd->add_option("--p", o.p, "Top level")};
  cmd->add_option("--phi", o.phi, "Convex function: x, x^R, exp");
  cmd->add_option("--partition", o.partition, "Blocks like {1},{2,3}");
  cmd->add_option("--instance", o.instance, "Replay a matrices JSON file instead of sampling");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--field", o.field, "Entries of random instances")->check(CLI::IsMember({"real", "complex"}));
  cmd->add_option("--scale", o.scale, "Entry scale of random instances")->check(CLI::PositiveNumber);
}

int cmd_verify(const RunOptions& o, std::ostream& out) {
  SearchConfig cfg = build_config(o);
  const SearchResult result = execute(o, cfg);
  const std::string lines = report_lines(result);
  if (!o.out.empty()) {
    write_file_atomic(o.out, lines);
  } else if (!o.summary) {
    out << lines;
  }
  if (o.summary) out << summary_to_json(result).dump() << '\n';
  return result.violations.empty() ? kOk : kViolation;
}

int cmd_search(const RunOptions& o, std::ostream& out) {
  SearchConfig cfg = build_config(o);
  const SearchResult result = execute(o, cfg);
  Json doc = search_result_to_json(result);
  doc["inequality_id"] = cfg.inequality_id;
  doc["spec_id"] = cfg.spec.id();
  doc["seed"] = cfg.seed;
  doc["trials"] = o.instance.empty() ? cfg.trials : 1;
  doc["r_grid"] = cfg.r_grid.values;
  emit(o.out, doc.dump(2) + "\n", out);
  if (!o.violations_dir.empty() && !result.violations.empty()) {
    fs::create_directories(o.violations_dir);
    std::size_t last_trial = static_cast<std::size_t>(-1);
    for (const auto& v : result.violations) {
      if (v.trial == last_trial) continue;
      last_trial = v.trial;
      Json file = instance_to_json(v.instance);
      file["trial"] = v.trial;
      file["inequality_id"] = cfg.inequality_id;
      file["spec_id"] = cfg.spec.id();
      file["report"] = report_to_json(v.report);
      const fs::path path = fs::path(o.violations_dir) / ("violation_" + std::to_string(v.trial) + ".json");
      write_file_atomic(path, file.dump(2) + "\n");
    }
  }
  return result.violations.empty() ? kOk : kViolation;
}

int cmd_reproduce(const std::string& id, const std::string& out_path, std::ostream& out) {
  const SearchResult result = reproduce(id);
  Json doc = search_result_to_json(result);
  doc["example"] = id;
  doc["reproduced"] = true;
  Json reports = Json::array();
  for (const auto& tr : result.reports) reports.push_back(report_to_json(tr.report));
  doc["reports"] = std::move(reports);
  emit(out_path, doc.dump(2) + "\n", out);
  return kOk;
}

int cmd_gmf(const std::string& spec_text, const std::string& matrix_path, const std::string& engine,
            std::ostream& out) {
  const Matrix a = matrix_from_json(read_json_file(matrix_path));
  const GmfSpec spec = parse_spec(spec_text, a.rows());
  GmfValue v;
  if (engine == "auto") {
    v = gmf(spec, a);
  } else if (engine == "naive") {
    v = gmf_naive(spec, a);
  } else if (engine == "tensor") {
    v = gmf_tensor_oracle(spec, a);
  } else if (engine == "ryser") {
    if (spec.kind() != GmfKind::Per) usage("the ryser engine evaluates permanents only");
    v = permanent_ryser(a);
  } else {
    if (spec.kind() != GmfKind::Det) usage("the lu engine evaluates determinants only");
    v = determinant(a);
  }
  out << shortest(v.raw.real());
  if (v.imag_residue > kImagTolerance * std::max(1.0, gmf_scale(a, spec.degree()))) {
    out << ' ' << shortest(v.raw.imag());
  }
  out << '\n';
  return kOk;
}

int cmd_eig(const std::string& matrix_path, std::ostream& out) {
  const auto eig = hermitian_eig(matrix_from_json(read_json_file(matrix_path)));
  out << Json({{"eigenvalues", eig.eigenvalues}}).dump() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized matrix functions and PSD inequality checks", "gmfineq"};
  app.require_subcommand(1);

  RunOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Evaluate a suite on seeded instances; JSON-lines reports");
  add_run_options(verify, verify_opts);
  verify->add_flag("--summary", verify_opts.summary, "Print counts and the worst report");

  RunOptions search_opts;
  auto* search = app.add_subcommand("search", "Search for violations; SearchResult JSON");
  add_run_options(search, search_opts);
  search->add_option("--violations-dir", search_opts.violations_dir, "Write replayable violation instances here");

  std::string example;
  std::string reproduce_out;
  auto* repro = app.add_subcommand("reproduce", "Re-run a known example and check its claims");
  repro->add_option("id", example, "eg2_2 | eg2_3 | finite_diff | majorization_gap")->required();
  repro->add_option("--out", reproduce_out, "Output file");

  std::string gmf_spec = "det";
  std::string gmf_matrix;
  std::string gmf_engine = "auto";
  auto* gmf_cmd = app.add_subcommand("gmf", "Evaluate one generalized matrix function");
  gmf_cmd->add_option("--spec", gmf_spec, "det | per | cyclic[:k] | custom:FILE | products");
  gmf_cmd->add_option("--matrix", gmf_matrix, "Matrix JSON file")->required();
  gmf_cmd->add_option("--engine", gmf_engine, "auto | naive | ryser | lu | tensor")
      ->check(CLI::IsMember({"auto", "naive", "ryser", "lu", "tensor"}));

  std::string eig_matrix;
  auto* eig_cmd = app.add_subcommand("eig", "Eigenvalues of a Hermitian matrix");
  eig_cmd->add_option("--matrix", eig_matrix, "Matrix JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_opts, out);
    if (search->parsed()) return cmd_search(search_opts, out);
    if (repro->parsed()) return cmd_reproduce(example, reproduce_out, out);
    if (gmf_cmd->parsed()) return cmd_gmf(gmf_spec, gmf_matrix, gmf_engine, out);
    if (eig_cmd->parsed()) return cmd_eig(eig_matrix, out);
  } catch (const ReproductionError& e) {
    err << "not reproduced: " << e.what() << '\n';
    return kViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical_failure(e.code()) ? kNumerical : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace gmfineq::cli
