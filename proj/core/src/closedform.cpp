#include "sybil/closedform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sybil/error.hpp"
#include "sybil/lambert_w.hpp"
#include "sybil/numeric.hpp"

namespace sybil {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this distance from c = 1 the log-rule closed form is 0/0; use its limit.
constexpr double kLogSingularity = 1e-8;

struct Unconstrained {
  double w_star;
  double kappa;
};

Unconstrained unconstrained(const VotingRule& rule, double c) {
  switch (rule.kind()) {
    case RuleKind::Linear:
      // x/(x + c) increases toward 1.
      return {kInf, 1.0};
    case RuleKind::Quadratic:
    case RuleKind::Power: {
      const double beta = rule.beta();
      if (c == 0.0) return {0.0, kInf};
      const double kappa =
          std::pow(beta, beta) * std::pow(1.0 - beta, 1.0 - beta) / std::pow(c, 1.0 - beta);
      if (rule.kind() == RuleKind::Quadratic) return {c, 0.5 / std::sqrt(c)};
      return {beta * c / (1.0 - beta), kappa};
    }
    case RuleKind::Logarithmic: {
      const double shift = c - 1.0;
      if (std::abs(shift) < kLogSingularity) {
        // g(e - 1) = 1/(e - 1 + c), which is 1/e at c = 1.
        return {std::numbers::e - 1.0, 1.0 / (std::numbers::e - 1.0 + c)};
      }
      // At c = 0 this is W0(-1/e) = -1: w* = 0 and kappa = 1 (the x -> 0 limit).
      const double y = lambert_w0(shift / std::numbers::e);
      return {shift / y - 1.0, y / shift};
    }
  }
  return {0.0, 0.0};
}

}  // namespace

double per_dollar(const VotingRule& rule, double c, double x) {
  if (!(c >= 0.0) || !(x >= 0.0) || x + c == 0.0) {
    throw DomainError("per_dollar needs x >= 0, c >= 0 and x + c > 0 (x = " + format_number(x) +
                      ", c = " + format_number(c) + ")");
  }
  return rule.eval(x) / (x + c);
}

double unconstrained_maximizer(const VotingRule& rule, double c) {
  if (!(c >= 0.0)) throw DomainError("per-wallet cost must be nonnegative");
  return std::max(0.0, unconstrained(rule, c).w_star);
}

RelaxedOptimum relaxed_optimum(const VotingRule& rule, double c, double m) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError("per-wallet cost must be finite and nonnegative, got " + format_number(c));
  }
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw DomainError("minimum balance must be finite and nonnegative, got " + format_number(m));
  }
  Unconstrained free = unconstrained(rule, c);
  free.w_star = std::max(0.0, free.w_star);

  RelaxedOptimum out;
  if (free.w_star < m) {
    out.w_star = m;
    out.kappa = per_dollar(rule, c, m);
    out.constrained = true;
  } else {
    if (std::isinf(free.kappa)) {
      throw DomainError("kappa is unbounded for " + rule.to_string() +
                        " with zero per-wallet cost and zero minimum balance");
    }
    out.w_star = free.w_star;
    out.kappa = free.kappa;
  }
  out.v_star_per_A = out.kappa;
  return out;
}

double closed_form_power(const VotingRule& rule, const CostScheme& costs, double budget) {
  const double usable = costs.usable_budget(budget);
  if (!(usable >= 0.0)) {
    throw DomainError("budget " + format_number(budget) + " does not cover the setup cost");
  }
  const RelaxedOptimum opt = relaxed_optimum(rule, costs);
  if (opt.constrained) {
    throw DomainError("minimum balance binds (unconstrained optimum below m); closed form does "
                      "not apply, use optimal_split");
  }
  return usable * opt.kappa;
}

}  // namespace sybil
