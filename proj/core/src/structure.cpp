#include "backlund/structure.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "backlund/errors.hpp"

namespace backlund {

StructureF build_structure_F(std::vector<PowerTerm> terms, std::optional<Expr> w) {
  std::set<int> seen;
  for (const auto& t : terms) {
    if (!seen.insert(t.n).second) {
      raise(ErrorKind::DuplicateExponent, "exponent n = " + std::to_string(t.n) + " appears twice");
    }
  }
  StructureF f;
  f.terms_ = std::move(terms);
  f.w_ = std::move(w);
  return f;
}

double StructureF::linear_coefficient(double z) const {
  if (!w_) return 0.0;
  return -0.5 * schwarzian(w_->jet(z, 3));
}

double StructureF::operator()(double z, double v) const {
  if (v < 0.0 || !std::isfinite(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "F evaluated at v = " << v << " (solutions are positive)";
    raise(ErrorKind::Domain, msg.str());
  }
  double sum = 0.0;
  for (const auto& t : terms_) {
    if (t.n < 0 && v == 0.0) raise(ErrorKind::Domain, "negative power of v = 0");
    const int power = t.n + 1;
    double gp_pow = 1.0;
    if (power != 0) {
      const double gp = t.g.jet(z, 1).taylor(1);
      if (power < 0 && gp == 0.0) raise(ErrorKind::Domain, "negative power of vanishing G'");
      gp_pow = std::pow(gp, power);
    }
    sum += t.coefficient * gp_pow * std::pow(v, t.n);
  }
  return sum + linear_coefficient(z) * v;
}

StructureFunction StructureF::as_function() const {
  return [self = *this](double z, double v) { return self(z, v); };
}

}  // namespace backlund
