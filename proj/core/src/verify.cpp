#include "backlund/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "backlund/errors.hpp"

namespace backlund {
namespace {

constexpr int kParallelThreshold = 4096;

struct PointResult {
  double abs = 0.0;
  double rel = 0.0;
};

PointResult evaluate(const SolutionEvaluator& sol, const ResidualForm& form, double z) {
  try {
    const ResidualSample s = form(sol.jet(z, kDefaultJetOrder));
    const double abs = std::fabs(s.residual);
    return {abs, abs / (1.0 + std::fabs(s.scale))};
  } catch (const Error& e) {
    std::ostringstream msg;
    msg.precision(17);
    msg << e.what() << " [grid point z = " << z << ']';
    raise(e.kind(), msg.str());
  }
}

}  // namespace

ResidualForm pinney_form(const ErmakovParams& params) {
  return [params](const Jet& y) {
    return ResidualSample{ep_residual(y, params), ep_residual_scale(y, params)};
  };
}

ResidualForm emden_form(const EmdenParams& params, EmdenVariant variant) {
  return [params, variant](const Jet& y) {
    return ResidualSample{ef_residual(y, params, variant), ef_residual_scale(y, params, variant)};
  };
}

ResidualForm structure_form(const StructureFunction& F) {
  return [F](const Jet& y) {
    const double v = y.value();
    const double rhs = F(y.point(), v * v);
    return ResidualSample{v * y.derivative(2) - rhs, std::fabs(rhs)};
  };
}

GridReport grid_scan(const SolutionEvaluator& sol, const ResidualForm& form, Interval interval, int n, double tol,
                     unsigned threads) {
  if (!(tol > 0.0)) raise(ErrorKind::InvalidInput, "tolerance must be positive");
  if (interval.lo < sol.domain().lo || interval.hi > sol.domain().hi) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "scan interval [" << interval.lo << ", " << interval.hi << "] leaves the domain of " << sol.label();
    raise(ErrorKind::Domain, msg.str());
  }
  const std::vector<double> z = scan_points(interval, n);
  std::vector<PointResult> results(z.size());

  if (threads == 0) {
    threads = n < kParallelThreshold ? 1U : std::clamp(std::thread::hardware_concurrency(), 1U, 16U);
  }
  if (threads == 1) {
    for (std::size_t i = 0; i < z.size(); ++i) results[i] = evaluate(sol, form, z[i]);
  } else {
    const std::size_t chunks = std::min<std::size_t>(threads, z.size());
    std::vector<std::exception_ptr> errors(chunks);
    {
      std::vector<std::jthread> workers;
      for (std::size_t c = 0; c < chunks; ++c) {
        workers.emplace_back([&, c] {
          try {
            for (std::size_t i = c; i < z.size(); i += chunks) results[i] = evaluate(sol, form, z[i]);
          } catch (...) {
            errors[c] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  GridReport report;
  report.n_points = n;
  report.tolerance = tol;
  report.argmax_z = z.front();
  for (std::size_t i = 0; i < z.size(); ++i) {
    report.max_abs_residual = std::max(report.max_abs_residual, results[i].abs);
    if (results[i].rel > report.max_rel_residual) {
      report.max_rel_residual = results[i].rel;
      report.argmax_z = z[i];
    }
    if (!(results[i].rel <= tol)) report.failures.emplace_back(z[i], results[i].abs);
  }
  return report;
}

}  // namespace backlund
