#include "bvk/report.hpp"

namespace bvk {

bool IdentityCheck::check(const Element& lhs, const Element& rhs,
                          const std::vector<std::pair<std::string, Element>>& inputs) {
  ++rep_.samples;
  if (lhs == rhs) return true;
  if (rep_.passed) {
    rep_.passed = false;
    Counterexample ce;
    auto fmt = [&](const Element& e) { return alg_ ? alg_->format(e) : std::string("?"); };
    for (const auto& [n, e] : inputs) ce.inputs.emplace_back(n, fmt(e));
    ce.lhs = fmt(lhs);
    ce.rhs = fmt(rhs);
    ce.residual = fmt(lhs - rhs);
    rep_.counterexample = ce;
  }
  return false;
}

void IdentityCheck::fail(const std::string& why) {
  if (rep_.passed) {
    rep_.passed = false;
    Counterexample ce;
    ce.residual = why;
    rep_.counterexample = ce;
  }
}

bool IdentityCheck::expect(bool ok, const std::string& why) {
  ++rep_.samples;
  if (!ok) fail(why);
  return ok;
}

bool all_passed(const std::vector<IdentityReport>& reps) {
  for (const auto& r : reps)
    if (!r.passed) return false;
  return true;
}

}  // namespace bvk
