#include "gmfineq/serialization.hpp"

#include <fstream>
#include <sstream>

#include "gmfineq/error.hpp"

namespace gmfineq {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    parse_error(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

// n-by-n array of numbers.
std::vector<double> square(const Json& rows, std::size_t n, const char* what) {
  if (!rows.is_array() || rows.size() != n) parse_error(std::string(what) + " must have n rows");
  std::vector<double> out;
  out.reserve(n * n);
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != n) parse_error(std::string(what) + " must have n columns");
    for (const Json& x : row) out.push_back(number(x, what));
  }
  return out;
}

Permutation permutation_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) parse_error("each permutation needs n images");
  std::vector<int> images;
  for (const Json& x : j) {
    if (!x.is_number_integer()) parse_error("permutation images must be integers");
    images.push_back(x.get<int>());
  }
  return Permutation(std::move(images));
}

Json param_to_json(const ParamValue& v) {
  return std::visit([](const auto& x) { return Json(x); }, v);
}

ParamValue param_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  parse_error("params must be numbers or strings");
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "HOLDS") return Verdict::Holds;
  if (s == "VIOLATED") return Verdict::Violated;
  if (s == "EQUALITY") return Verdict::Equality;
  parse_error("unknown verdict '" + s + "'");
}

}  // namespace

Json matrix_to_json(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "matrix JSON holds square matrices");
  const std::size_t n = a.rows();
  Json real = Json::array();
  Json imag = Json::array();
  bool has_imag = false;
  for (std::size_t i = 0; i < n; ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      re_row.push_back(a(i, j).real());
      im_row.push_back(a(i, j).imag());
      has_imag = has_imag || a(i, j).imag() != 0.0;
    }
    real.push_back(std::move(re_row));
    imag.push_back(std::move(im_row));
  }
  Json out = {{"n", n}, {"real", std::move(real)}};
  if (has_imag) out["imag"] = std::move(imag);
  return out;
}

Matrix matrix_from_json(const Json& j) {
  const std::size_t n = count(field(j, "n"), "n");
  if (n == 0) parse_error("matrix needs n >= 1");
  const auto re = square(field(j, "real"), n, "real");
  const auto im = j.contains("imag") ? square(j.at("imag"), n, "imag") : std::vector<double>(n * n, 0.0);
  Matrix a(n, n);
  for (std::size_t k = 0; k < n * n; ++k) a.data()[k] = Complex(re[k], im[k]);
  return a;
}

Json character_to_json(const LinearCharacter& chi) {
  const auto& group = *chi.group();
  Json elements = Json::array();
  for (const auto& p : group.elements()) elements.push_back(p.images());
  Json values = Json::array();
  for (const auto& z : chi.values()) values.push_back({{"re", z.real()}, {"im", z.imag()}});
  return {{"n", group.degree()}, {"elements", std::move(elements)}, {"character", std::move(values)}};
}

LinearCharacter character_from_json(const Json& j) {
  const std::size_t n = count(field(j, "n"), "n");
  if (n == 0) parse_error("group degree must be >= 1");
  const int degree = static_cast<int>(n);
  GroupPtr group;
  if (j.contains("elements")) {
    const Json& list = j.at("elements");
    if (!list.is_array()) parse_error("elements must be an array");
    std::vector<Permutation> elements;
    for (const Json& p : list) elements.push_back(permutation_from_json(p, n));
    group = make_group(PermutationGroup::from_elements(degree, std::move(elements)));
  } else if (j.contains("generators")) {
    const Json& list = j.at("generators");
    if (!list.is_array()) parse_error("generators must be an array");
    std::vector<Permutation> gens;
    for (const Json& p : list) gens.push_back(permutation_from_json(p, n));
    group = make_group(closure(degree, gens));
  } else {
    parse_error("permchar JSON needs 'elements' or 'generators'");
  }
  const Json& chi = field(j, "character");
  if (chi.is_string()) {
    const auto name = chi.get<std::string>();
    if (name == "trivial") return trivial_character(group);
    if (name == "sign") return sign_character(group);
    if (name.starts_with("cyclic:")) {
      try {
        return cyclic_character(group, std::stoi(name.substr(7)));
      } catch (const std::logic_error&) {
        parse_error("bad cyclic character '" + name + "'");
      }
    }
    parse_error("unknown character preset '" + name + "'");
  }
  if (!chi.is_array()) parse_error("character must be an array or a preset name");
  std::vector<std::complex<double>> values;
  for (const Json& z : chi) {
    if (z.is_number()) {
      values.emplace_back(z.get<double>(), 0.0);
    } else {
      values.emplace_back(number(field(z, "re"), "re"), z.contains("im") ? number(z.at("im"), "im") : 0.0);
    }
  }
  return validate_character(group, std::move(values));
}

Json instance_to_json(std::span<const Matrix> matrices) {
  Json list = Json::array();
  for (const auto& a : matrices) list.push_back(matrix_to_json(a));
  return {{"matrices", std::move(list)}};
}

std::vector<Matrix> instance_from_json(const Json& j) {
  const Json& list = field(j, "matrices");
  if (!list.is_array() || list.empty()) parse_error("matrices must be a nonempty array");
  std::vector<Matrix> out;
  for (const Json& m : list) out.push_back(matrix_from_json(m));
  return out;
}

Json report_to_json(const SlackReport& r) {
  Json params = Json::object();
  for (const auto& [key, value] : r.params) params[key] = param_to_json(value);
  return {{"inequality_id", r.inequality_id},
          {"spec_id", r.spec_id},
          {"params", std::move(params)},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"slack", r.slack},
          {"tolerance", r.tolerance},
          {"verdict", std::string(to_string(r.verdict))},
          {"instance_digest", r.instance_digest}};
}

SlackReport report_from_json(const Json& j) {
  SlackReport r;
  try {
    r.inequality_id = field(j, "inequality_id").get<std::string>();
    r.spec_id = field(j, "spec_id").get<std::string>();
    const Json& params = field(j, "params");
    if (!params.is_object()) parse_error("params must be an object");
    for (const auto& [key, value] : params.items()) r.params[key] = param_from_json(value);
    r.lhs = number(field(j, "lhs"), "lhs");
    r.rhs = number(field(j, "rhs"), "rhs");
    r.slack = number(field(j, "slack"), "slack");
    r.tolerance = number(field(j, "tolerance"), "tolerance");
    r.verdict = verdict_from_string(field(j, "verdict").get<std::string>());
    r.instance_digest = field(j, "instance_digest").get<std::string>();
  } catch (const Json::type_error& e) {
    parse_error(e.what());
  }
  return r;
}

std::string report_line(const SlackReport& r) { return report_to_json(r).dump(); }

Json summary_to_json(const SearchResult& result) {
  std::size_t holds = 0;
  std::size_t equality = 0;
  std::size_t violated = 0;
  for (const auto& tr : result.reports) {
    switch (tr.report.verdict) {
      case Verdict::Holds:
        ++holds;
        break;
      case Verdict::Equality:
        ++equality;
        break;
      case Verdict::Violated:
        ++violated;
        break;
    }
  }
  Json out = {{"evaluated", result.evaluated}, {"holds", holds}, {"equality", equality}, {"violated", violated}};
  if (result.evaluated > 0) {
    out["worst_slack"] = result.worst.slack;
    out["worst"] = report_to_json(result.worst);
  }
  return out;
}

Json search_result_to_json(const SearchResult& result) {
  Json violations = Json::array();
  for (const auto& v : result.violations) {
    violations.push_back({{"trial", v.trial}, {"report", report_to_json(v.report)}});
  }
  Json out = {{"evaluated", result.evaluated}, {"violations", std::move(violations)}};
  if (result.evaluated > 0) out["worst"] = report_to_json(result.worst);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::InvalidArgument, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::InvalidArgument, "cannot replace '" + path.string() + "'");
  }
}

}  // namespace gmfineq
