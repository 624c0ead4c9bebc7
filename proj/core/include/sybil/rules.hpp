#pragma once

#include <string>
#include <string_view>

namespace sybil {

enum class RuleKind { Linear, Quadratic, Power, Logarithmic };

/// Wallet-level vote valuation f : tokens -> votes.
///
/// The four supported rules are f(w) = w, sqrt(w), w^beta with beta in (0,1),
/// and ln(w + 1). Each is extended continuously to f(0) = 0. Parameters are
/// validated once at construction; `eval` only checks its argument.
///
/// Arbitrary user-supplied rules are not supported. A new rule needs a branch
/// in `eval`, `parse`, and the closed-form maximizer in closedform.cpp.
class VotingRule {
 public:
  static VotingRule linear() noexcept { return VotingRule(RuleKind::Linear, 1.0); }
  static VotingRule quadratic() noexcept { return VotingRule(RuleKind::Quadratic, 0.5); }
  static VotingRule logarithmic() noexcept { return VotingRule(RuleKind::Logarithmic, 0.0); }
  /// Throws ConfigError unless 0 < beta < 1.
  static VotingRule power(double beta);

  /// Accepts `linear`, `quadratic`, `power:<beta>` and `log`.
  static VotingRule parse(std::string_view text);

  RuleKind kind() const noexcept { return kind_; }
  /// Exponent for Power (0.5 for Quadratic, 1 for Linear, 0 for Logarithmic).
  double beta() const noexcept { return beta_; }

  /// f(w). Throws DomainError for negative or non-finite w.
  double eval(double w) const;

  /// Weak concavity; all four rules qualify. Use `kind() != Linear` for strict.
  bool is_concave() const noexcept { return true; }

  /// Round-trips through `parse`.
  std::string to_string() const;

  friend bool operator==(const VotingRule&, const VotingRule&) = default;

 private:
  VotingRule(RuleKind kind, double beta) noexcept : kind_(kind), beta_(beta) {}

  RuleKind kind_;
  double beta_;
};

}  // namespace sybil
