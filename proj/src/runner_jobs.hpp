#pragma once

// Job bodies of the suite runner; private to the library.

#include <string>
#include <vector>

#include "bvk/lie.hpp"
#include "bvk/runner.hpp"
#include "bvk/schouten.hpp"
#include "bvk/vosa.hpp"

namespace bvk {

class JobContext;

// view of one parameter with its path for error positions
class Param {
 public:
  Param(const JobContext* ctx, const nlohmann::json* j, std::string path) : ctx_(ctx), j_(j), path_(std::move(path)) {}

  bool has(const std::string& key) const;
  Param operator[](const std::string& key) const;
  Param operator[](std::size_t i) const;
  std::size_t size() const;
  bool is_list() const { return j_ && j_->is_array(); }
  bool is_map() const { return j_ && j_->is_object(); }
  bool is_string() const { return j_ && j_->is_string(); }
  bool present() const { return j_ && !j_->is_null(); }

  long as_int() const;
  long as_int(long def) const { return present() ? as_int() : def; }
  bool as_bool(bool def) const;
  std::string as_string() const;  // scalars only; numbers are printed
  std::string as_string(const std::string& def) const { return present() ? as_string() : def; }
  Scalar as_scalar() const;
  std::vector<long> int_list() const;
  std::vector<std::string> string_list() const;

  [[noreturn]] void fail(const std::string& why) const;
  const std::string& path() const { return path_; }
  std::pair<int, int> mark() const;

 private:
  const JobContext* ctx_;
  const nlohmann::json* j_;
  std::string path_;
};

struct BuiltAlgebra {
  AlgebraPtr alg;
  std::shared_ptr<const PolyAlgebra> poly;
  std::shared_ptr<const BcSystem> bc;
  std::shared_ptr<const LieComplex> lie;
  std::shared_ptr<const MultivectorSpace> mv;
  int cap = 0;
  std::string description;
  LinOp default_delta() const;
  Domain default_domain() const;
};

class JobContext {
 public:
  JobContext(const JobSpec& spec, const RunOptions& opts, JobReport& rep, const SuiteSpec* suite)
      : spec(spec), opts(opts), rep(rep), suite(suite) {}

  const JobSpec& spec;
  const RunOptions& opts;
  JobReport& rep;
  const SuiteSpec* suite;

  Param root() const { return Param(this, &rep.params, ""); }
  Param operator[](const std::string& key) const { return root()[key]; }
  std::uint64_t seed() const { return static_cast<std::uint64_t>(root()["seed"].as_int(0)); }
  long samples(long def) const { return root()["samples"].as_int(def); }

  BuiltAlgebra algebra(const Param& p) const;
  BuiltAlgebra algebra() const { return algebra(root()["algebra"]); }
  Element element(const BuiltAlgebra& a, const Param& p) const;
  LinOp op(const BuiltAlgebra& a, const Param& p) const;
  Domain domain(const BuiltAlgebra& a, const Param& p) const;  // default domain when absent
  LieAlgebraData lie_data(const Param& p) const;

  void add(IdentityReport r, const std::string& suffix = "");
  void add(const std::vector<IdentityReport>& rs, const std::string& suffix = "");
  void add_order(const Superalgebra& alg, const OrderReport& o);
  void value(const std::string& k, const std::string& v) { rep.values.emplace_back(k, v); }
};

std::vector<std::string> job_suite_names();
void run_job_body(JobContext& ctx);

}  // namespace bvk
