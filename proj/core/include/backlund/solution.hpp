#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "backlund/expr.hpp"
#include "backlund/jet.hpp"

namespace backlund {

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double z) const noexcept { return z >= lo && z <= hi; }
  bool finite() const noexcept;
  double length() const noexcept { return hi - lo; }

  static Interval positive_axis() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

inline constexpr int kDomainSamples = 1000;

/// Largest connected run of `guard` inside a finite `requested` interval.
/// The run is located on kDomainSamples linear samples and each open end is
/// pushed towards the sign change by bisection; returned endpoints always
/// satisfy the guard. DomainError when the guard fails at every sample.
Interval admissible_subinterval(const Interval& requested, const std::function<bool(double)>& guard,
                                int samples = kDomainSamples);

/// n points on [lo, hi]: log-spaced when lo > 0, linear otherwise.
std::vector<double> scan_points(const Interval& interval, int n);

/// A positive solution candidate z -> (y, y', y'', ...) on a validity
/// interval. Evaluation outside the domain, or a non-positive value, raises
/// DomainError.
class SolutionEvaluator {
 public:
  SolutionEvaluator(std::string label, JetFunction fn, Interval domain);

  static SolutionEvaluator from_expr(std::string label, const Expr& expr, Interval domain);

  const std::string& label() const noexcept { return label_; }
  const Interval& domain() const noexcept { return domain_; }
  const std::optional<Expr>& expr() const noexcept { return expr_; }

  Jet jet(double z, int order = kDefaultJetOrder) const;
  double operator()(double z) const { return jet(z, 0).value(); }

  SolutionEvaluator with_domain(Interval domain) const;
  SolutionEvaluator with_label(std::string label) const;

  /// Adapter for use as an Expr leaf (e.g. feeding a solution into B2).
  JetFunction as_jet_function() const;

 private:
  std::string label_;
  JetFunction fn_;
  Interval domain_;
  std::optional<Expr> expr_;
};

}  // namespace backlund
