// bvkit: run identity checks from the command line.
//
//   bvkit run SUITE.yaml [--jobs N] [--seed S] [--cap C] [--format json] [--out FILE]
//   bvkit verify-gbva --algebra 'poly(2,2,3)' --set samples=50
//   bvkit check-order --config job.yaml
//
// Exit status: 0 every identity holds, 1 some identity fails, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bvk/runner.hpp"

namespace {

struct Common {
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<int> cap;
  std::string format = "text";
  std::string out;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--jobs,-j", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "seed for every job, replacing the file's");
  app->add_option("--cap", c.cap, "truncation cap for every algebra")->check(CLI::NonNegativeNumber);
  app->add_option("--format", c.format, "report format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--out,-o", c.out, "write the report here instead of stdout");
  app->add_flag("--timing", c.timing, "print job times in text reports");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bvk::ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int finish(const bvk::RunReport& r, const Common& c) {
  bvk::emit_report(r, c.format, c.out, c.timing);
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"identity checker for BV-type operators"};
  app.require_subcommand(1);

  Common common;
  std::string suite_file;
  CLI::App* run = app.add_subcommand("run", "run every job of a suite file");
  run->add_option("suite", suite_file, "YAML suite file")->required();
  add_common(run, common);

  struct Single {
    std::string config, algebra, delta, lie;
    std::vector<std::string> sets;
  };
  std::vector<std::string> suites = {"check-order", "verify-gbva",  "verify-general", "lie-homology",
                                     "sn-check",    "vosa-verify", "master-check"};
  std::map<std::string, Single> single;
  for (const auto& s : suites) {
    CLI::App* sub = app.add_subcommand(s, "run one " + s + " job");
    Single& o = single[s];
    sub->add_option("--config,-c", o.config, "YAML mapping with the job parameters");
    sub->add_option("--algebra", o.algebra, "algebra, e.g. poly(2,2,3) or bc(4)");
    if (s == "verify-gbva" || s == "master-check") sub->add_option("--delta", o.delta, "operator expression");
    if (s == "lie-homology") sub->add_option("--lie", o.lie, "sl2, nonabelian2 or abelian(n)");
    sub->add_option("--set", o.sets, "parameter override key=value (YAML value); repeatable");
    add_common(sub, common);
  }
  app.add_subcommand("suites", "list job kinds")->callback([] {
    for (const auto& n : bvk::suite_names()) std::cout << n << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  bvk::RunOptions opts;
  opts.jobs = common.jobs;
  opts.seed = common.seed;
  opts.cap = common.cap;
  try {
    if (run->parsed()) return finish(bvk::run_suite_file(suite_file, opts), common);
    for (const auto& s : suites) {
      if (!app.got_subcommand(s)) continue;
      const Single& o = single[s];
      std::vector<std::string> sets;
      if (!o.algebra.empty()) sets.push_back("algebra=\"" + o.algebra + "\"");
      if (!o.delta.empty()) sets.push_back("delta=\"" + o.delta + "\"");
      if (!o.lie.empty()) sets.push_back("lie=\"" + o.lie + "\"");
      sets.insert(sets.end(), o.sets.begin(), o.sets.end());
      std::string text = o.config.empty() ? "" : slurp(o.config);
      bvk::SuiteSpec suite;
      suite.source = o.config.empty() ? "<command line>" : o.config;
      suite.jobs.push_back(bvk::parse_job(text, s, suite.source, sets));
      return finish(bvk::run_suite(suite, opts), common);
    }
  } catch (const bvk::ConfigError& e) {
    std::cerr << "bvkit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bvkit: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
