#include "backlund/solution.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "backlund/errors.hpp"

namespace backlund {
namespace {

bool guard_holds(const std::function<bool(double)>& guard, double z) {
  try {
    return guard(z);
  } catch (const Error&) {
    return false;
  }
}

// Shrinks [pass, fail] (in either orientation) onto the guard boundary and
// returns the last point known to pass.
double bisect_boundary(const std::function<bool(double)>& guard, double pass, double fail) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (pass + fail);
    if (mid == pass || mid == fail) break;
    if (guard_holds(guard, mid)) {
      pass = mid;
    } else {
      fail = mid;
    }
  }
  return pass;
}

std::string describe(const Interval& d) {
  std::ostringstream out;
  out.precision(17);
  out << '[' << d.lo << ", " << d.hi << ']';
  return out.str();
}

}  // namespace

bool Interval::finite() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

Interval admissible_subinterval(const Interval& requested, const std::function<bool(double)>& guard,
                                int samples) {
  if (!requested.finite() || !(requested.lo < requested.hi)) {
    raise(ErrorKind::InvalidInput, "admissible_subinterval needs a finite interval, got " + describe(requested));
  }
  if (samples < 2) raise(ErrorKind::InvalidInput, "need at least two domain samples");

  std::vector<double> x(static_cast<std::size_t>(samples));
  std::vector<char> ok(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    x[static_cast<std::size_t>(i)] = i == samples - 1 ? requested.hi : requested.lo + t * requested.length();
    ok[static_cast<std::size_t>(i)] = guard_holds(guard, x[static_cast<std::size_t>(i)]) ? 1 : 0;
  }

  int best_start = -1;
  int best_len = 0;
  for (int i = 0; i < samples;) {
    if (!ok[static_cast<std::size_t>(i)]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < samples && ok[static_cast<std::size_t>(j)]) ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_start = i;
    }
    i = j;
  }
  if (best_start < 0) raise(ErrorKind::Domain, "domain guards fail everywhere on " + describe(requested));

  const auto first = static_cast<std::size_t>(best_start);
  const auto last = static_cast<std::size_t>(best_start + best_len - 1);
  Interval out{x[first], x[last]};
  if (first > 0) out.lo = bisect_boundary(guard, x[first], x[first - 1]);
  if (last + 1 < x.size()) out.hi = bisect_boundary(guard, x[last], x[last + 1]);
  return out;
}

std::vector<double> scan_points(const Interval& interval, int n) {
  if (n < 2) raise(ErrorKind::InvalidInput, "a scan needs at least two points");
  if (!interval.finite() || !(interval.lo < interval.hi)) {
    raise(ErrorKind::InvalidInput, "scan interval must be finite and non-empty, got " + describe(interval));
  }
  std::vector<double> z(static_cast<std::size_t>(n));
  const bool logarithmic = interval.lo > 0.0;
  const double a = logarithmic ? std::log(interval.lo) : interval.lo;
  const double b = logarithmic ? std::log(interval.hi) : interval.hi;
  for (int i = 0; i < n; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / (n - 1);
    z[static_cast<std::size_t>(i)] = logarithmic ? std::exp(t) : t;
  }
  // Pin the endpoints exactly so the scan never steps outside the domain.
  z.front() = interval.lo;
  z.back() = interval.hi;
  return z;
}

SolutionEvaluator::SolutionEvaluator(std::string label, JetFunction fn, Interval domain)
    : label_(std::move(label)), fn_(std::move(fn)), domain_(domain) {
  if (!fn_) raise(ErrorKind::InvalidInput, "solution '" + label_ + "' has no evaluator");
  if (!(domain_.lo <= domain_.hi)) raise(ErrorKind::InvalidInput, "empty domain " + describe(domain_));
}

SolutionEvaluator SolutionEvaluator::from_expr(std::string label, const Expr& expr, Interval domain) {
  SolutionEvaluator s(std::move(label), [expr](double z, int order) { return expr.jet(z, order); }, domain);
  s.expr_ = expr;
  return s;
}

Jet SolutionEvaluator::jet(double z, int order) const {
  if (!domain_.contains(z)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << label_ << ": z = " << z << " outside domain " << describe(domain_);
    raise(ErrorKind::Domain, msg.str());
  }
  Jet j = fn_(z, order);
  if (!(j.value() > 0.0) || !j.all_finite()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << label_ << ": non-positive or non-finite value " << j.value() << " at z = " << z;
    raise(ErrorKind::Domain, msg.str());
  }
  return j;
}

SolutionEvaluator SolutionEvaluator::with_domain(Interval domain) const {
  SolutionEvaluator s = *this;
  s.domain_ = domain;
  return s;
}

SolutionEvaluator SolutionEvaluator::with_label(std::string label) const {
  SolutionEvaluator s = *this;
  s.label_ = std::move(label);
  return s;
}

JetFunction SolutionEvaluator::as_jet_function() const {
  return [self = *this](double z, int order) { return self.jet(z, order); };
}

}  // namespace backlund
