#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bvk/algebra.hpp"

namespace bvk {

struct Counterexample {
  std::vector<std::pair<std::string, std::string>> inputs;  // name, serialized element
  std::string lhs, rhs, residual;
};

struct IdentityReport {
  std::string name;
  long samples = 0;
  bool passed = true;
  std::string note;
  std::optional<Counterexample> counterexample;
};

// Accumulates residual checks for one identity and keeps the first failure.
class IdentityCheck {
 public:
  IdentityCheck(std::string name, const Superalgebra* alg) : alg_(alg) { rep_.name = std::move(name); }

  // records lhs == rhs, returns true on equality
  bool check(const Element& lhs, const Element& rhs,
             const std::vector<std::pair<std::string, Element>>& inputs);
  bool check_zero(const Element& residual, const std::vector<std::pair<std::string, Element>>& inputs) {
    return check(residual, Element(), inputs);
  }
  void fail(const std::string& why);
  // one sample of a non-element check
  bool expect(bool ok, const std::string& why);
  void note(const std::string& n) { rep_.note = n; }
  IdentityReport report() const { return rep_; }
  bool passed() const { return rep_.passed; }

 private:
  const Superalgebra* alg_;
  IdentityReport rep_;
};

bool all_passed(const std::vector<IdentityReport>& reps);

}  // namespace bvk
