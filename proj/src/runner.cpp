#include "bvk/runner.hpp"

#include <yaml-cpp/yaml.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "bvk/bv.hpp"
#include "bvk/lie.hpp"
#include "bvk/parse.hpp"
#include "runner_jobs.hpp"

namespace bvk {

ConfigError::ConfigError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                  : what),
      line(line),
      column(column) {}

namespace {

std::pair<int, int> mark_of(const YAML::Node& n) { return {n.Mark().line + 1, n.Mark().column + 1}; }

nlohmann::json to_json_node(const YAML::Node& n, const std::string& path,
                            std::map<std::string, std::pair<int, int>>& marks) {
  marks[path] = mark_of(n);
  switch (n.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar: {
      const std::string& s = n.Scalar();
      if (n.Tag() == "!") {  // quoted; positions count from the first character inside the quotes
        ++marks[path].second;
        return s;
      }
      static const std::regex integer("[-+]?[0-9]+");
      if (std::regex_match(s, integer)) {
        try {
          return std::stoll(s);
        } catch (const std::out_of_range&) {
          return s;
        }
      }
      if (s == "true") return true;
      if (s == "false") return false;
      return s;
    }
    case YAML::NodeType::Sequence: {
      nlohmann::json a = nlohmann::json::array();
      for (std::size_t i = 0; i < n.size(); ++i)
        a.push_back(to_json_node(n[i], path + "[" + std::to_string(i) + "]", marks));
      return a;
    }
    case YAML::NodeType::Map: {
      nlohmann::json o = nlohmann::json::object();
      for (const auto& kv : n) {
        std::string k = kv.first.as<std::string>();
        o[k] = to_json_node(kv.second, path.empty() ? k : path + "." + k, marks);
      }
      return o;
    }
  }
  return nullptr;
}

JobSpec job_from_node(const YAML::Node& j, const std::string& source, const std::string& forced_suite) {
  auto [line, col] = mark_of(j);
  if (!j.IsMap() && !(j.IsNull() && !forced_suite.empty())) throw ConfigError(source + ": a job must be a mapping", line, col);
  JobSpec js;
  js.line = line;
  nlohmann::json all = j.IsNull() ? nlohmann::json::object() : to_json_node(j, "", js.marks);
  auto where = [&](const std::string& key) {
    auto it = js.marks.find(key);
    return it == js.marks.end() ? std::make_pair(line, col) : it->second;
  };
  if (!forced_suite.empty()) {
    if (!all.contains("name")) all["name"] = forced_suite;
    if (all.contains("suite") && all["suite"] != forced_suite) {
      auto [l, c] = where("suite");
      throw ConfigError(source + ": this file is for suite '" + all["suite"].dump() + "'", l, c);
    }
    all["suite"] = forced_suite;
  }
  if (!all.contains("name") || !all["name"].is_string() || all["name"].get<std::string>().empty()) {
    throw ConfigError(source + ": job without a name", line, col);
  }
  js.name = all["name"];
  if (!all.contains("suite") || !all["suite"].is_string())
    throw ConfigError(source + ": job " + js.name + " has no suite", line, col);
  js.suite = all["suite"];
  auto known = suite_names();
  if (std::find(known.begin(), known.end(), js.suite) == known.end()) {
    auto [l, c] = where("suite");
    throw ConfigError(source + ": unknown suite '" + js.suite + "'", l, c);
  }
  if (all.contains("criterion")) {
    if (!all["criterion"].is_number_integer()) {
      auto [l, c] = where("criterion");
      throw ConfigError(source + ": criterion must be an integer", l, c);
    }
    js.criterion = all["criterion"];
  }
  all.erase("name");
  all.erase("suite");
  all.erase("criterion");
  if (!all.contains("seed")) all["seed"] = 0;
  js.params = all;
  return js;
}

YAML::Node load_yaml(const std::string& text, const std::string& source) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ": " + e.msg, e.mark.line + 1, e.mark.column + 1);
  }
}

}  // namespace

JobSpec parse_job(const std::string& text, const std::string& suite, const std::string& source,
                  const std::vector<std::string>& overrides) {
  YAML::Node root = load_yaml(text, source);
  for (const auto& o : overrides) {
    auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + o + "'");
    if (!root.IsMap() && !root.IsNull()) break;
    root[o.substr(0, eq)] = load_yaml(o.substr(eq + 1), "--set " + o);
  }
  return job_from_node(root, source, suite);
}

std::vector<std::string> suite_names() { return job_suite_names(); }

SuiteSpec parse_suite(const std::string& text, const std::string& source) {
  YAML::Node root = load_yaml(text, source);
  SuiteSpec spec;
  spec.source = source;
  if (root.IsNull()) return spec;
  if (!root.IsMap()) {
    auto [l, c] = mark_of(root);
    throw ConfigError(source + ": the suite must be a mapping with a 'jobs' list", l, c);
  }
  if (auto v = root["version"]) {
    if (!v.IsScalar() || v.Scalar() != "1") {
      auto [l, c] = mark_of(v);
      throw ConfigError(source + ": unsupported suite version", l, c);
    }
  }
  for (const auto& kv : root) {
    std::string k = kv.first.as<std::string>();
    if (k != "version" && k != "jobs") {
      auto [l, c] = mark_of(kv.first);
      throw ConfigError(source + ": unknown top-level key '" + k + "'", l, c);
    }
  }
  YAML::Node jobs = root["jobs"];
  if (!jobs || jobs.IsNull()) return spec;
  if (!jobs.IsSequence()) {
    auto [l, c] = mark_of(jobs);
    throw ConfigError(source + ": 'jobs' must be a list", l, c);
  }
  auto known = suite_names();
  std::set<std::string> seen;
  for (const auto& j : jobs) {
    JobSpec js = job_from_node(j, source, "");
    if (!seen.insert(js.name).second) {
      auto it = js.marks.find("name");
      throw ConfigError(source + ": duplicate job name '" + js.name + "'", it->second.first, it->second.second);
    }
    spec.jobs.push_back(std::move(js));
  }
  return spec;
}

SuiteSpec load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read suite file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str(), path);
}

bool RunReport::passed() const {
  for (const auto& j : jobs)
    if (j.status != JobStatus::Pass) return false;
  return true;
}

int RunReport::exit_code() const {
  bool error = false;
  for (const auto& j : jobs) {
    if (j.status == JobStatus::Fail) return 1;
    if (j.status == JobStatus::Error) error = true;
  }
  return error ? 2 : 0;
}

JobReport run_job(const JobSpec& job, const RunOptions& opts, const SuiteSpec* suite) {
  JobReport rep;
  rep.name = job.name;
  rep.suite = job.suite;
  rep.criterion = job.criterion;
  rep.params = job.params;
  if (opts.seed) rep.params["seed"] = *opts.seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    JobContext ctx(job, opts, rep, suite);
    run_job_body(ctx);
    for (const auto& id : rep.identities)
      if (!id.passed) rep.status = JobStatus::Fail;
    if (rep.identities.empty() && rep.status == JobStatus::Pass) rep.warnings.push_back("job checked nothing");
  } catch (const HomologyError& e) {
    IdentityReport id;
    id.name = "complex squares to zero";
    id.passed = false;
    id.counterexample = Counterexample{{}, "", "", e.what()};
    rep.identities.push_back(id);
    rep.status = JobStatus::Fail;
  } catch (const ConfigError& e) {
    rep.status = JobStatus::Error;
    rep.error = std::string("configuration: ") + e.what();
  } catch (const PreconditionError& e) {
    rep.status = JobStatus::Error;
    rep.error = std::string("precondition: ") + e.what();
  } catch (const std::exception& e) {
    rep.status = JobStatus::Error;
    rep.error = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RunReport run_suite(const SuiteSpec& suite, const RunOptions& opts) {
  RunReport r;
  r.source = suite.source;
  if (suite.jobs.empty()) r.warnings.push_back("empty job list");
  r.jobs.resize(suite.jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.jobs.size(); i = next++) r.jobs[i] = run_job(suite.jobs[i], opts, &suite);
  };
  int n = std::max(1, std::min<int>(opts.jobs, static_cast<int>(suite.jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return r;
}

RunReport run_suite_file(const std::string& path, const RunOptions& opts) { return run_suite(load_suite(path), opts); }

namespace {

const char* status_name(JobStatus s) {
  switch (s) {
    case JobStatus::Pass:
      return "PASS";
    case JobStatus::Fail:
      return "FAIL";
    case JobStatus::Error:
      return "ERROR";
  }
  return "?";
}

std::string grade_string(const std::vector<int>& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + ")";
}

}  // namespace

std::string emit_text(const RunReport& r, bool timing) {
  std::ostringstream os;
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  for (const auto& j : r.jobs) {
    os << "job " << j.name << " [" << j.suite << "]";
    if (j.criterion) os << " criterion " << j.criterion;
    os << ": " << status_name(j.status);
    if (timing) os << " (" << j.seconds << " s)";
    os << "\n";
    if (!j.algebra.empty()) os << "  algebra " << j.algebra << "\n";
    if (!j.error.empty()) os << "  error: " << j.error << "\n";
    for (const auto& w : j.warnings) os << "  warning: " << w << "\n";
    for (const auto& [k, v] : j.values) os << "  " << k << " = " << v << "\n";
    for (const auto& o : j.orders) {
      os << "  order " << o.label << ": " << (o.order ? std::to_string(*o.order) : "> " + std::to_string(o.r_max))
         << " (r_max " << o.r_max << ", " << o.tuples << " tuples";
      if (!o.domain.empty()) os << ", " << o.domain;
      os << ")\n";
      for (const auto& w : o.witnesses) {
        os << "    witness Phi^" << w.arity << "(";
        for (std::size_t i = 0; i < w.args.size(); ++i) os << (i ? ", " : "") << w.args[i];
        os << ") = " << w.value << "\n";
      }
    }
    for (const auto& h : j.homology) {
      os << "  homology " << h.label << ":";
      for (const auto& [g, d] : h.dims) os << " " << grade_string(g) << "=" << d;
      os << "\n";
    }
    for (const auto& id : j.identities) {
      os << "  identity " << id.name << ": " << (id.passed ? "pass" : "FAIL") << " (" << id.samples << " samples)";
      if (!id.note.empty()) os << " [" << id.note << "]";
      os << "\n";
      if (!id.passed) {
        os << "    COUNTEREXAMPLE\n";
        if (id.counterexample) {
          const auto& ce = *id.counterexample;
          for (const auto& [n, v] : ce.inputs) os << "      " << n << " = " << v << "\n";
          if (!ce.lhs.empty() || !ce.rhs.empty()) {
            os << "      lhs = " << ce.lhs << "\n";
            os << "      rhs = " << ce.rhs << "\n";
          }
          os << "      residual = " << ce.residual << "\n";
        }
      }
    }
  }
  os << "overall: " << (r.passed() ? "PASS" : "FAIL") << " (" << r.jobs.size() << " jobs)\n";
  return os.str();
}

nlohmann::json to_json(const RunReport& r) {
  using nlohmann::json;
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["source"] = r.source;
  out["passed"] = r.passed();
  out["exit_code"] = r.exit_code();
  out["warnings"] = r.warnings;
  out["jobs"] = json::array();
  for (const auto& j : r.jobs) {
    json jj;
    jj["name"] = j.name;
    jj["suite"] = j.suite;
    jj["criterion"] = j.criterion;
    jj["status"] = status_name(j.status);
    jj["error"] = j.error;
    jj["algebra"] = j.algebra;
    jj["params"] = j.params;
    jj["seconds"] = j.seconds;
    jj["warnings"] = j.warnings;
    jj["values"] = json::object();
    for (const auto& [k, v] : j.values) jj["values"][k] = v;
    jj["identities"] = json::array();
    for (const auto& id : j.identities) {
      json ji{{"name", id.name}, {"samples", id.samples}, {"passed", id.passed}, {"note", id.note}};
      if (id.counterexample) {
        const auto& ce = *id.counterexample;
        json inputs = json::array();
        for (const auto& [n, v] : ce.inputs) inputs.push_back({{"name", n}, {"value", v}});
        ji["counterexample"] = {{"inputs", inputs}, {"lhs", ce.lhs}, {"rhs", ce.rhs}, {"residual", ce.residual}};
      } else {
        ji["counterexample"] = nullptr;
      }
      jj["identities"].push_back(ji);
    }
    jj["orders"] = json::array();
    for (const auto& o : j.orders) {
      json jo{{"label", o.label}, {"r_max", o.r_max}, {"domain", o.domain}, {"tuples", o.tuples}};
      jo["order"] = o.order ? json(*o.order) : json(nullptr);
      jo["witnesses"] = json::array();
      for (const auto& w : o.witnesses) jo["witnesses"].push_back({{"arity", w.arity}, {"args", w.args}, {"value", w.value}});
      jj["orders"].push_back(jo);
    }
    jj["homology"] = json::array();
    for (const auto& h : j.homology) {
      json t = json::array();
      for (const auto& [g, d] : h.dims) t.push_back({{"grade", g}, {"dim", d}});
      jj["homology"].push_back({{"label", h.label}, {"table", t}});
    }
    out["jobs"].push_back(jj);
  }
  return out;
}

void emit_report(const RunReport& r, const std::string& format, const std::string& path, bool timing) {
  std::string body;
  if (format == "json")
    body = to_json(r).dump(2) + "\n";
  else if (format == "text")
    body = emit_text(r, timing);
  else
    throw ConfigError("unknown report format '" + format + "'");
  if (path.empty() || path == "-") {
    std::cout << body;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write report to " + path);
  out << body;
  if (!out) throw ConfigError("cannot write report to " + path);
}

}  // namespace bvk
