#include "problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "backlund/chart.hpp"
#include "backlund/errors.hpp"

namespace backlund::cli {
namespace {

using nlohmann::json;

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const char* key, const std::string& path, std::optional<double> fallback = {}) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    if (fallback) return *fallback;
    throw ProblemError(path + "." + key, "missing number");
  }
  if (!v->is_number()) throw ProblemError(path + "." + key, "expected a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw ProblemError(path + "." + key, "must be finite");
  return x;
}

int integer(const json& obj, const char* key, const std::string& path, std::optional<int> fallback = {}) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    if (fallback) return *fallback;
    throw ProblemError(path + "." + key, "missing integer");
  }
  if (!v->is_number_integer()) throw ProblemError(path + "." + key, "expected an integer");
  return v->get<int>();
}

std::string text(const json& obj, const char* key, const std::string& path, std::optional<std::string> fallback = {}) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    if (fallback) return *fallback;
    throw ProblemError(path + "." + key, "missing string");
  }
  if (!v->is_string()) throw ProblemError(path + "." + key, "expected a string");
  return v->get<std::string>();
}

const json& object(const json& obj, const char* key, const std::string& path) {
  const json* v = find(obj, key);
  if (v == nullptr || !v->is_object()) throw ProblemError(path + "." + key, "expected an object");
  return *v;
}

Expr expression(const std::string& source, const std::string& path) {
  try {
    return parse_expr(source);
  } catch (const Error& e) {
    throw ProblemError(path, e.what());
  }
}

Interval read_domain(const json& doc) {
  const json* v = find(doc, "domain");
  if (v == nullptr || !v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
    throw ProblemError("domain", "expected [z_lo, z_hi]");
  }
  const Interval d{(*v)[0].get<double>(), (*v)[1].get<double>()};
  if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.lo < d.hi)) {
    throw ProblemError("domain", "need finite z_lo < z_hi");
  }
  return d;
}

MoebiusMap read_moebius(const json& doc, const char* key) {
  const json* v = find(doc, key);
  if (v == nullptr) return MoebiusMap::identity();
  if (!v->is_array() || v->size() != 4) throw ProblemError(key, "expected [a, b, c, d]");
  double c[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(*v)[i].is_number()) throw ProblemError(std::string(key) + "[" + std::to_string(i) + "]", "expected a number");
    c[i] = (*v)[i].get<double>();
  }
  try {
    return {c[0], c[1], c[2], c[3]};
  } catch (const Error& e) {
    throw ProblemError(key, e.what());
  }
}

std::pair<double, double> read_step(const json& doc) {
  const json& s = object(doc, "step", "");
  return {number(s, "Delta", "step"), number(s, "K", "step")};
}

StepList read_steps(const json& doc) {
  const json* v = find(doc, "steps");
  if (v == nullptr) throw ProblemError("steps", "missing step list");
  if (!v->is_array()) throw ProblemError("steps", "expected [[Delta, K], ...]");
  StepList steps;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const json& s = (*v)[i];
    const std::string path = "steps[" + std::to_string(i) + "]";
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
      throw ProblemError(path, "expected [Delta, K]");
    }
    steps.emplace_back(s[0].get<double>(), s[1].get<double>());
  }
  return steps;
}

void expect_solution(const std::string& kind, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (kind == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ProblemError("solution", "'" + kind + "' is not one of " + list);
}

void load_ermakov(const json& doc, Problem& pb) {
  const json& p = object(doc, "params", "");
  ErmakovParams params{number(p, "alpha", "params"), integer(p, "k", "params", 0), number(p, "p", "params"),
                       read_moebius(doc, "moebius")};
  try {
    params.validate();
  } catch (const Error& e) {
    throw ProblemError("params", e.what());
  }
  const std::string kind = text(doc, "solution", "", "general");
  expect_solution(kind, {"seed", "general", "backlund"});
  pb.form = pinney_form(params);
  pb.structure = ep_structure(params);
  pb.f = ep_f(params);
  if (kind == "seed") {
    pb.solution = ep_seed(params).with_domain(pb.domain);
  } else if (kind == "general") {
    pb.solution = ep_general(params, pb.domain);
  } else {
    pb.solution = backlund_B2(ep_seed(params), *pb.f, ep_f_domain(params, pb.domain));
  }
}

EmdenParams read_emden(const json& doc, bool second) {
  const json& p = object(doc, "params", "");
  EmdenParams params;
  params.alpha = number(p, "alpha", "params");
  params.beta = number(p, "beta", "params");
  params.m = integer(p, "m", "params");
  if (second) {
    params.eta = number(p, "eta", "params");
    params.gamma = number(p, "gamma", "params");
    params.delta = number(p, "delta", "params", 1.0);
  }
  try {
    params.validate();
  } catch (const Error& e) {
    throw ProblemError("params", e.what());
  }
  return params;
}

void load_emden1(const json& doc, const Overrides& overrides, Problem& pb) {
  const EmdenParams params = read_emden(doc, false);
  const std::string kind = overrides.steps ? "ladder" : text(doc, "solution", "", "backlund");
  expect_solution(kind, {"seed", "backlund", "ladder"});
  pb.form = emden_form(params, EmdenVariant::First);
  pb.structure = ef_structure(params, EmdenVariant::First);
  if (kind == "seed") {
    pb.solution = ef1_seed(params).with_domain(pb.domain);
  } else if (kind == "backlund") {
    const auto [d, k] = read_step(doc);
    pb.f = ef1_f(d, k);
    pb.solution = ef1_backlund(ef1_seed(params), d, k, pb.domain);
  } else {
    const StepList steps = overrides.steps ? *overrides.steps : read_steps(doc);
    LadderResult result = ef1_ladder(params, steps, pb.domain);
    pb.f = ef1_f(result.state.R, result.state.S);
    pb.ladder = std::move(result.state);
    pb.solution = std::move(result.solution);
  }
}

void load_emden2(const json& doc, Problem& pb) {
  const EmdenParams params = read_emden(doc, true);
  const std::string kind = text(doc, "solution", "", "backlund");
  expect_solution(kind, {"seed", "backlund"});
  pb.form = emden_form(params, EmdenVariant::Second);
  pb.structure = ef_structure(params, EmdenVariant::Second);
  const SolutionEvaluator seed = ef2_seed(params);
  if (kind == "seed") {
    const Interval d = seed.domain();
    if (pb.domain.lo < d.lo || pb.domain.hi > d.hi) throw ProblemError("domain", "leaves eta + gamma z > 0");
    pb.solution = seed.with_domain(pb.domain);
  } else {
    const auto [d, k] = read_step(doc);
    pb.f = ef2_f(params, d, k);
    pb.solution = ef2_backlund(seed, params, d, k, pb.domain);
  }
}

void load_custom(const json& doc, Problem& pb) {
  const json& st = object(doc, "structure", "");
  std::vector<PowerTerm> terms;
  if (const json* list = find(st, "terms")) {
    if (!list->is_array()) throw ProblemError("structure.terms", "expected a list");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string path = "structure.terms[" + std::to_string(i) + "]";
      const json& t = (*list)[i];
      if (!t.is_object()) throw ProblemError(path, "expected {n, a, G}");
      terms.push_back({integer(t, "n", path), number(t, "a", path), expression(text(t, "G", path), path + ".G")});
    }
  }
  std::optional<Expr> w;
  if (find(st, "w") != nullptr) w = expression(text(st, "w", "structure"), "structure.w");
  try {
    pb.structure = build_structure_F(std::move(terms), w);
  } catch (const Error& e) {
    throw ProblemError("structure.terms", e.what());
  }
  pb.form = structure_form(pb.structure.as_function());
  pb.f = expression(text(doc, "f", ""), "f");

  const Expr seed_expr = expression(text(doc, "seed", ""), "seed");
  const SolutionEvaluator seed = SolutionEvaluator::from_expr("custom-seed", seed_expr, pb.domain);
  const std::string kind = text(doc, "solution", "", "backlund");
  expect_solution(kind, {"seed", "backlund"});
  if (kind == "seed") {
    pb.solution = seed;
  } else {
    const Expr f = *pb.f;
    const Interval dom = seed.domain();
    auto guard = [f, dom](double z) {
      const Jet j = f.jet(z, 1);
      return j.taylor(1) > 0.0 && dom.contains(j.value());
    };
    pb.solution = backlund_B2(seed, f, admissible_subinterval(pb.domain, guard));
  }
}

}  // namespace

StepList parse_steps(const std::string& source) {
  StepList steps;
  std::stringstream all(source);
  std::string item;
  while (std::getline(all, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ProblemError("--steps", "expected 'Delta,K' pairs separated by ';'");
    try {
      std::size_t used = 0;
      const std::string a = item.substr(0, comma);
      const std::string b = item.substr(comma + 1);
      const double d = std::stod(a, &used);
      if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
      const double k = std::stod(b, &used);
      if (b.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(b);
      steps.emplace_back(d, k);
    } catch (const std::logic_error&) {
      throw ProblemError("--steps", "cannot read '" + item + "'");
    }
  }
  return steps;
}

Problem load_problem(const json& doc, const Overrides& overrides) {
  if (!doc.is_object()) throw ProblemError("(root)", "expected a JSON object");
  Problem pb{.name = text(doc, "name", "", "problem"),
             .family = text(doc, "family", ""),
             .domain = read_domain(doc),
             .grid = integer(doc, "grid", "", 200),
             .tolerance = {},
             .solution = SolutionEvaluator::from_expr("none", Expr(0.0), {}),
             .form = {},
             .structure = {},
             .f = {},
             .ladder = {}};
  if (pb.grid < 2) throw ProblemError("grid", "need at least 2 points");
  if (find(doc, "tolerance") != nullptr) {
    pb.tolerance = number(doc, "tolerance", "");
    if (!(*pb.tolerance > 0.0)) throw ProblemError("tolerance", "must be positive");
  }
  if (overrides.steps && pb.family != "emden-fowler-1") {
    throw ProblemError("family", "step lists apply to emden-fowler-1 only");
  }

  try {
    if (pb.family == "ermakov-pinney") {
      load_ermakov(doc, pb);
    } else if (pb.family == "emden-fowler-1") {
      load_emden1(doc, overrides, pb);
    } else if (pb.family == "emden-fowler-2") {
      load_emden2(doc, pb);
    } else if (pb.family == "custom") {
      load_custom(doc, pb);
    } else {
      throw ProblemError("family", "'" + pb.family + "' is not one of ermakov-pinney, emden-fowler-1, emden-fowler-2, custom");
    }
  } catch (const Error& e) {
    // Parameters passed validation, so what remains is an unusable domain or map.
    throw ProblemError(e.kind() == ErrorKind::Domain ? "domain" : "params", e.what());
  }

  if (overrides.solution_expr) {
    const Expr y = expression(*overrides.solution_expr, "--solution");
    pb.solution = SolutionEvaluator::from_expr("custom", y, pb.domain);
    pb.ladder.reset();
  }
  return pb;
}

Problem load_problem_file(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ProblemError(path, "cannot open problem file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ProblemError(path, e.what());
  }
  return load_problem(doc, overrides);
}

}  // namespace backlund::cli
