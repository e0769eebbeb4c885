// mobmatch command line front end. Talks to the library through the C API only.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mobmatch/mobmatch.h"

namespace {

constexpr int kExitInput = 2;

struct InstanceHandle {
  mm_instance* ptr = nullptr;
  ~InstanceHandle() { mm_instance_free(ptr); }
};

struct SolutionHandle {
  mm_solution* ptr = nullptr;
  ~SolutionHandle() { mm_solution_free(ptr); }
};

struct TextHandle {
  mm_text* ptr = nullptr;
  ~TextHandle() { mm_text_free(ptr); }
  void Write(std::FILE* out) const {
    std::fwrite(mm_text_data(ptr), 1, mm_text_size(ptr), out);
  }
};

int Fail(mm_status status) {
  std::fprintf(stderr, "mobmatch: %s\n", mm_last_error());
  return static_cast<int>(status);
}

bool ReadFile(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return true;
}

int LoadInstance(const std::string& source, InstanceHandle& inst) {
  const mm_status st = mm_instance_load(source.c_str(), &inst.ptr);
  return st == MM_OK ? 0 : Fail(st);
}

int CmdSolve(const std::string& source, bool csv) {
  InstanceHandle inst;
  if (int rc = LoadInstance(source, inst)) return rc;
  SolutionHandle sol;
  if (mm_status st = mm_solve(inst.ptr, &sol.ptr)) return Fail(st);
  TextHandle text;
  const mm_status st = csv ? mm_solution_csv(sol.ptr, &text.ptr)
                           : mm_solution_report(sol.ptr, &text.ptr);
  if (st != MM_OK) return Fail(st);
  text.Write(stdout);
  return 0;
}

int CmdOracle(const std::string& source) {
  InstanceHandle inst;
  if (int rc = LoadInstance(source, inst)) return rc;
  SolutionHandle sol;
  if (mm_status st = mm_oracle(inst.ptr, &sol.ptr)) return Fail(st);
  TextHandle text;
  if (mm_status st = mm_solution_report(sol.ptr, &text.ptr)) return Fail(st);
  text.Write(stdout);
  return 0;
}

int CmdAudit(const std::string& source, const std::string& cert_path) {
  InstanceHandle inst;
  if (int rc = LoadInstance(source, inst)) return rc;
  std::string cert;
  if (!ReadFile(cert_path, cert)) {
    std::fprintf(stderr, "mobmatch: cannot read certificate '%s'\n", cert_path.c_str());
    return kExitInput;
  }
  TextHandle text;
  const mm_status st = mm_audit(inst.ptr, cert.data(), cert.size(), &text.ptr);
  if (st != MM_OK && st != MM_ERR_VIOLATION) return Fail(st);
  text.Write(stdout);
  return static_cast<int>(st);
}

int CmdMechanism(const std::string& source, const std::string& reports_path) {
  InstanceHandle inst;
  if (int rc = LoadInstance(source, inst)) return rc;
  std::string reports;
  const bool have_reports = !reports_path.empty();
  if (have_reports && !ReadFile(reports_path, reports)) {
    std::fprintf(stderr, "mobmatch: cannot read reports '%s'\n", reports_path.c_str());
    return kExitInput;
  }
  TextHandle text;
  const mm_status st = mm_mechanism(inst.ptr, have_reports ? reports.data() : nullptr,
                                    reports.size(), &text.ptr);
  if (st != MM_OK) return Fail(st);
  text.Write(stdout);
  return 0;
}

int CmdGen(const mm_generator_config& cfg, const std::string& output) {
  InstanceHandle inst;
  if (mm_status st = mm_instance_generate(&cfg, &inst.ptr)) return Fail(st);
  TextHandle text;
  if (mm_status st = mm_instance_serialize(inst.ptr, &text.ptr)) return Fail(st);
  if (output.empty() || output == "-") {
    text.Write(stdout);
    return 0;
  }
  std::FILE* f = std::fopen(output.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "mobmatch: cannot write '%s'\n", output.c_str());
    return kExitInput;
  }
  text.Write(f);
  std::fclose(f);
  return 0;
}

int FinishSweep(mm_status st, const TextHandle& csv, std::size_t violations,
                const char* what) {
  if (st != MM_OK && st != MM_ERR_VIOLATION) return Fail(st);
  csv.Write(stdout);
  std::fprintf(stderr, "%s: %zu violation(s)\n", what, violations);
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact many-to-one assignment, duality certificates and VCG payments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mm_version()));

  std::string source;
  std::string cert_path;
  std::string reports_path;
  std::string output;
  std::string sweep_instance;
  bool csv = false;
  int grid = 20;
  std::uint64_t seed = 42;

  mm_generator_config gen_cfg;
  mm_generator_config_init(&gen_cfg);
  mm_suite_config suite;
  mm_suite_config_init(&suite);

  auto* solve = app.add_subcommand("solve", "Solve an instance and print assignment, dual and payments");
  solve->add_option("instance", source, "Instance file or bundled name")->required();
  solve->add_flag("--csv", csv, "Emit the assignment CSV instead of the text report");

  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum for small instances");
  oracle->add_option("instance", source, "Instance file or bundled name")->required();

  auto* audit = app.add_subcommand("audit", "Check a stored assignment and dual for stability");
  audit->add_option("instance", source, "Instance file or bundled name")->required();
  audit->add_option("certificate", cert_path, "Certificate (match/phi/psi lines)")->required();

  auto* mech = app.add_subcommand("mechanism", "Run the payment mechanism on reported types");
  mech->add_option("instance", source, "Instance file or bundled name")->required();
  mech->add_option("--reports", reports_path, "Reported types; missing agents report truthfully");

  auto* gen = app.add_subcommand("gen", "Write a seeded random instance");
  gen->add_option("--seed", seed, "Generator seed")->envname("MOBMATCH_SEED");
  gen->add_option("--travelers", gen_cfg.travelers, "Number of travelers")->capture_default_str();
  gen->add_option("--providers", gen_cfg.providers, "Number of providers")->capture_default_str();
  gen->add_option("--min-capacity", gen_cfg.min_capacity)->capture_default_str();
  gen->add_option("--max-capacity", gen_cfg.max_capacity)->capture_default_str();
  bool balanced = false;
  gen->add_flag("--balanced", balanced, "Force total capacity to equal the traveler count");
  gen->add_option("-o,--output", output, "Output path (default stdout)");

  auto* truth = app.add_subcommand("sweep-truthfulness", "Misreport sweep, regret CSV on stdout");
  truth->add_option("--seed", seed, "Suite seed")->envname("MOBMATCH_SEED");
  truth->add_option("--instances", suite.instances)->capture_default_str();
  truth->add_option("--grid", grid, "Grid resolution per type coordinate")->capture_default_str();
  truth->add_option("--instance", sweep_instance, "Sweep a single instance instead of a suite");
  truth->add_option("--threads", suite.threads, "Worker threads (0 = hardware)");

  auto* part = app.add_subcommand("verify-participation", "Check utilities and transfers are non-negative");
  part->add_option("--seed", seed, "Suite seed")->envname("MOBMATCH_SEED");
  part->add_option("--trials", suite.instances)->default_val(200);
  part->add_option("--max-travelers", suite.max_travelers)->capture_default_str();
  part->add_option("--max-providers", suite.max_providers)->capture_default_str();
  part->add_option("--max-capacity", suite.max_capacity)->capture_default_str();
  part->add_option("--threads", suite.threads, "Worker threads (0 = hardware)");

  if (argc > 1 && argv[1][0] != '-') {
    try {
      (void)app.get_subcommand(argv[1]);
    } catch (const CLI::OptionNotFound&) {
      std::cerr << "mobmatch: unknown command '" << argv[1] << "'\n\n" << app.help();
      return kExitInput;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "mobmatch: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  if (*solve) return CmdSolve(source, csv);
  if (*oracle) return CmdOracle(source);
  if (*audit) return CmdAudit(source, cert_path);
  if (*mech) return CmdMechanism(source, reports_path);
  if (*gen) {
    gen_cfg.seed = seed;
    gen_cfg.balanced = balanced ? 1 : 0;
    return CmdGen(gen_cfg, output);
  }
  if (*truth) {
    TextHandle text;
    std::size_t violations = 0;
    mm_status st;
    if (!sweep_instance.empty()) {
      InstanceHandle inst;
      if (int rc = LoadInstance(sweep_instance, inst)) return rc;
      st = mm_sweep_truthfulness_instance(inst.ptr, grid, &text.ptr, &violations);
    } else {
      suite.seed = seed;
      st = mm_sweep_truthfulness(&suite, grid, &text.ptr, &violations);
    }
    return FinishSweep(st, text, violations, "sweep-truthfulness");
  }
  if (*part) {
    suite.seed = seed;
    TextHandle text;
    std::size_t violations = 0;
    const mm_status st = mm_verify_participation(&suite, &text.ptr, &violations);
    return FinishSweep(st, text, violations, "verify-participation");
  }
  return kExitInput;
}
