#include "sybil/rules.hpp"

#include <cmath>

#include "sybil/error.hpp"
#include "sybil/numeric.hpp"

namespace sybil {

VotingRule VotingRule::power(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("power rule exponent must lie in (0, 1), got " + format_number(beta));
  }
  return VotingRule(RuleKind::Power, beta);
}

VotingRule VotingRule::parse(std::string_view text) {
  if (text == "linear") return linear();
  if (text == "quadratic") return quadratic();
  if (text == "log") return logarithmic();
  constexpr std::string_view kPowerPrefix = "power:";
  if (text.substr(0, kPowerPrefix.size()) == kPowerPrefix) {
    return power(parse_decimal(text.substr(kPowerPrefix.size()), "power rule exponent"));
  }
  throw ConfigError("unknown voting rule \"" + std::string(text) +
                    "\" (expected linear, quadratic, power:<beta> or log)");
}

double VotingRule::eval(double w) const {
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw DomainError("voting rule evaluated at invalid balance " + format_number(w));
  }
  switch (kind_) {
    case RuleKind::Linear:
      return w;
    case RuleKind::Quadratic:
      return std::sqrt(w);
    case RuleKind::Power:
      return std::pow(w, beta_);
    case RuleKind::Logarithmic:
      return std::log1p(w);
  }
  return 0.0;
}

std::string VotingRule::to_string() const {
  switch (kind_) {
    case RuleKind::Linear:
      return "linear";
    case RuleKind::Quadratic:
      return "quadratic";
    case RuleKind::Power:
      return "power:" + format_number(beta_);
    case RuleKind::Logarithmic:
      return "log";
  }
  return "";
}

}  // namespace sybil
