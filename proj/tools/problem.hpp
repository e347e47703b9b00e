#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "backlund/emden.hpp"
#include "backlund/ermakov.hpp"
#include "backlund/solution.hpp"
#include "backlund/structure.hpp"
#include "backlund/verify.hpp"

namespace backlund::cli {

/// A malformed or inconsistent problem file; `path` names the offending field.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

using StepList = std::vector<std::pair<double, double>>;

/// "1,1;2,0.5" -> {(1, 1), (2, 0.5)}.
StepList parse_steps(const std::string& text);

struct Overrides {
  std::optional<std::string> solution_expr;
  std::optional<StepList> steps;
};

struct Problem {
  std::string name;
  std::string family;
  Interval domain;
  int grid = 200;
  std::optional<double> tolerance;

  SolutionEvaluator solution;
  ResidualForm form;
  StructureF structure;
  /// The Backlund map of the problem, when it has one.
  std::optional<Expr> f;
  std::optional<LadderState> ladder;
};

Problem load_problem(const nlohmann::json& doc, const Overrides& overrides = {});
Problem load_problem_file(const std::string& path, const Overrides& overrides = {});

}  // namespace backlund::cli
