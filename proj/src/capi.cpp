#include "mobmatch/mobmatch.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "mobmatch/assign.hpp"
#include "mobmatch/duality.hpp"
#include "mobmatch/error.hpp"
#include "mobmatch/generator.hpp"
#include "mobmatch/harness.hpp"
#include "mobmatch/instance_format.hpp"
#include "mobmatch/mechanism.hpp"
#include "mobmatch/pipeline.hpp"
#include "mobmatch/report.hpp"

struct mm_instance {
  mobmatch::Instance value;
};

struct mm_solution {
  mobmatch::Instance instance;
  mobmatch::SolveOutcome outcome;
  bool has_dual = false;
};

struct mm_text {
  std::string value;
};

namespace {

thread_local std::string g_last_error;

mm_status StatusOf(mobmatch::ErrorKind kind) {
  return kind == mobmatch::ErrorKind::kInternal || kind == mobmatch::ErrorKind::kNotOptimal
             ? MM_ERR_INTERNAL
             : MM_ERR_INPUT;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
mm_status Guard(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const mobmatch::Error& e) {
    g_last_error = std::string(mobmatch::ErrorKindName(e.kind())) + ": " + e.what();
    return StatusOf(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MM_ERR_INTERNAL;
  }
}

mm_status NullArgument(const char* name) {
  g_last_error = std::string("null argument: ") + name;
  return MM_ERR_INPUT;
}

mm_text* NewText(std::string s) { return new mm_text{std::move(s)}; }

mobmatch::SuiteConfig ToSuite(const mm_suite_config& c) {
  mobmatch::SuiteConfig s;
  s.seed = c.seed;
  s.instances = c.instances;
  s.max_travelers = c.max_travelers;
  s.max_providers = c.max_providers;
  s.max_capacity = c.max_capacity;
  s.threads = c.threads;
  if (s.max_travelers == 0 || s.max_providers == 0 || s.max_capacity < 1) {
    throw mobmatch::Error(mobmatch::ErrorKind::kInvalidArgument,
                          "suite needs max travelers, providers and capacity >= 1");
  }
  return s;
}

}  // namespace

extern "C" {

const char* mm_version(void) { return "0.1.0"; }
const char* mm_last_error(void) { return g_last_error.c_str(); }

const char* mm_text_data(const mm_text* text) { return text ? text->value.c_str() : ""; }
size_t mm_text_size(const mm_text* text) { return text ? text->value.size() : 0; }
void mm_text_free(mm_text* text) { delete text; }

mm_status mm_instance_parse(const char* text, size_t length, mm_instance** out) {
  if (!text || !out) return NullArgument("text/out");
  return Guard([&] {
    *out = new mm_instance{mobmatch::parse_instance(std::string_view(text, length))};
    return MM_OK;
  });
}

mm_status mm_instance_load(const char* path, mm_instance** out) {
  if (!path || !out) return NullArgument("path/out");
  return Guard([&] {
    *out = new mm_instance{mobmatch::load_instance(path)};
    return MM_OK;
  });
}

void mm_generator_config_init(mm_generator_config* config) {
  if (!config) return;
  const mobmatch::GeneratorConfig d;
  config->seed = d.seed;
  config->travelers = static_cast<uint32_t>(d.travelers);
  config->providers = static_cast<uint32_t>(d.providers);
  config->min_capacity = d.min_capacity;
  config->max_capacity = d.max_capacity;
  config->balanced = d.balanced ? 1 : 0;
  config->min_willingness_units = d.min_willingness_units;
  config->max_willingness_units = d.max_willingness_units;
  config->min_cost_units = d.min_cost_units;
  config->max_cost_units = d.max_cost_units;
  config->theta_steps = d.theta_steps;
  config->delta_steps = d.delta_steps;
}

mm_status mm_instance_generate(const mm_generator_config* config, mm_instance** out) {
  if (!config || !out) return NullArgument("config/out");
  return Guard([&] {
    mobmatch::GeneratorConfig g;
    g.seed = config->seed;
    g.travelers = config->travelers;
    g.providers = config->providers;
    g.min_capacity = config->min_capacity;
    g.max_capacity = config->max_capacity;
    g.balanced = config->balanced != 0;
    g.min_willingness_units = config->min_willingness_units;
    g.max_willingness_units = config->max_willingness_units;
    g.min_cost_units = config->min_cost_units;
    g.max_cost_units = config->max_cost_units;
    g.theta_steps = config->theta_steps;
    g.delta_steps = config->delta_steps;
    *out = new mm_instance{mobmatch::generate_instance(g)};
    return MM_OK;
  });
}

mm_status mm_instance_serialize(const mm_instance* instance, mm_text** out) {
  if (!instance || !out) return NullArgument("instance/out");
  return Guard([&] {
    *out = NewText(mobmatch::serialize_instance(instance->value));
    return MM_OK;
  });
}

size_t mm_instance_travelers(const mm_instance* instance) {
  return instance ? instance->value.num_travelers() : 0;
}

size_t mm_instance_providers(const mm_instance* instance) {
  return instance ? instance->value.num_providers() : 0;
}

int mm_instance_balanced(const mm_instance* instance) {
  return instance && instance->value.balance().balanced() ? 1 : 0;
}

void mm_instance_free(mm_instance* instance) { delete instance; }

mm_status mm_solve(const mm_instance* instance, mm_solution** out) {
  if (!instance || !out) return NullArgument("instance/out");
  return Guard([&] {
    *out = new mm_solution{instance->value, mobmatch::solve_instance(instance->value), true};
    return MM_OK;
  });
}

mm_status mm_oracle(const mm_instance* instance, mm_solution** out) {
  if (!instance || !out) return NullArgument("instance/out");
  return Guard([&] {
    mobmatch::SolveOutcome outcome;
    outcome.matrix = mobmatch::build_utility_matrix(instance->value);
    outcome.assignment =
        mobmatch::brute_force_assignment(outcome.matrix, instance->value.capacities());
    outcome.balance = instance->value.balance();
    *out = new mm_solution{instance->value, std::move(outcome), false};
    return MM_OK;
  });
}

int64_t mm_solution_objective_micros(const mm_solution* solution) {
  return solution ? solution->outcome.assignment.objective.micros() : 0;
}

mm_status mm_solution_match(const mm_solution* solution, size_t traveler, int64_t* provider) {
  if (!solution || !provider) return NullArgument("solution/provider");
  const auto& matches = solution->outcome.assignment.matches;
  if (traveler >= matches.size()) {
    g_last_error = "traveler index out of range";
    return MM_ERR_INPUT;
  }
  *provider = matches[traveler] ? static_cast<int64_t>(*matches[traveler]) : -1;
  return MM_OK;
}

int mm_solution_has_dual(const mm_solution* solution) {
  return solution && solution->has_dual ? 1 : 0;
}

mm_status mm_solution_phi_micros(const mm_solution* solution, size_t traveler, int64_t* phi) {
  if (!solution || !phi) return NullArgument("solution/phi");
  if (!solution->has_dual || traveler >= solution->outcome.dual.phi.size()) {
    g_last_error = "no dual value for that traveler";
    return MM_ERR_INPUT;
  }
  *phi = solution->outcome.dual.phi[traveler].micros();
  return MM_OK;
}

mm_status mm_solution_psi_micros(const mm_solution* solution, size_t provider, int64_t* psi) {
  if (!solution || !psi) return NullArgument("solution/psi");
  if (!solution->has_dual || provider >= solution->outcome.dual.psi.size()) {
    g_last_error = "no dual value for that provider";
    return MM_ERR_INPUT;
  }
  *psi = solution->outcome.dual.psi[provider].micros();
  return MM_OK;
}

mm_status mm_solution_report(const mm_solution* solution, mm_text** out) {
  if (!solution || !out) return NullArgument("solution/out");
  return Guard([&] {
    if (solution->has_dual) {
      *out = NewText(mobmatch::format_solution(solution->instance, solution->outcome));
    } else {
      *out = NewText("version 1\nobjective " +
                     solution->outcome.assignment.objective.ToFixed() + "\n" +
                     mobmatch::format_assignment(solution->outcome.assignment));
    }
    return MM_OK;
  });
}

mm_status mm_solution_csv(const mm_solution* solution, mm_text** out) {
  if (!solution || !out) return NullArgument("solution/out");
  if (!solution->has_dual) {
    g_last_error = "CSV output needs a solution with dual prices";
    return MM_ERR_INPUT;
  }
  return Guard([&] {
    *out = NewText(mobmatch::emit_assignment_csv(solution->instance, solution->outcome));
    return MM_OK;
  });
}

void mm_solution_free(mm_solution* solution) { delete solution; }

mm_status mm_audit(const mm_instance* instance, const char* certificate, size_t length,
                   mm_text** report) {
  if (!instance || !certificate || !report) return NullArgument("instance/certificate/report");
  return Guard([&] {
    const auto& inst = instance->value;
    const auto cert = mobmatch::parse_certificate(std::string_view(certificate, length),
                                                  inst.num_travelers(), inst.num_providers());
    const auto matrix = mobmatch::build_utility_matrix(inst);
    const auto caps = inst.capacities();
    const auto assignment = mobmatch::make_assignment(matrix, caps, cert.matches);
    const auto stability = mobmatch::check_stability(matrix, caps, assignment, cert.dual);
    const auto slackness =
        mobmatch::check_complementary_slackness(matrix, caps, assignment, cert.dual);
    *report = NewText(mobmatch::format_audit(stability, slackness));
    return stability.ok ? MM_OK : MM_ERR_VIOLATION;
  });
}

mm_status mm_mechanism(const mm_instance* instance, const char* reports, size_t length,
                       mm_text** out) {
  if (!instance || !out) return NullArgument("instance/out");
  return Guard([&] {
    const auto& inst = instance->value;
    std::vector<mobmatch::Report> all = mobmatch::truthful_reports(inst);
    if (reports) {
      for (auto& r : mobmatch::parse_reports(std::string_view(reports, length),
                                             inst.num_travelers(), inst.num_providers())) {
        const std::size_t slot = r.agent.kind == mobmatch::AgentKind::kTraveler
                                     ? r.agent.id
                                     : inst.num_travelers() + r.agent.id;
        all[slot] = std::move(r);
      }
    }
    *out = NewText(mobmatch::format_mechanism(mobmatch::run_mechanism(inst, all)));
    return MM_OK;
  });
}

void mm_suite_config_init(mm_suite_config* config) {
  if (!config) return;
  const mobmatch::SuiteConfig d;
  config->seed = d.seed;
  config->instances = static_cast<uint32_t>(d.instances);
  config->max_travelers = static_cast<uint32_t>(d.max_travelers);
  config->max_providers = static_cast<uint32_t>(d.max_providers);
  config->max_capacity = d.max_capacity;
  config->threads = d.threads;
}

mm_status mm_verify_participation(const mm_suite_config* config, mm_text** csv,
                                  size_t* violations) {
  if (!config || !csv) return NullArgument("config/csv");
  return Guard([&] {
    const auto report = mobmatch::verify_participation(ToSuite(*config));
    *csv = NewText(mobmatch::emit_participation_csv(report));
    if (violations) *violations = report.violations + report.efficiency_mismatches;
    return report.ok() ? MM_OK : MM_ERR_VIOLATION;
  });
}

mm_status mm_sweep_truthfulness(const mm_suite_config* config, int32_t grid, mm_text** csv,
                                size_t* violations) {
  if (!config || !csv) return NullArgument("config/csv");
  return Guard([&] {
    const auto sweep = mobmatch::sweep_truthfulness(ToSuite(*config), grid);
    *csv = NewText(mobmatch::emit_truthfulness_csv(sweep));
    if (violations) *violations = sweep.violations;
    return sweep.ok() ? MM_OK : MM_ERR_VIOLATION;
  });
}

mm_status mm_sweep_truthfulness_instance(const mm_instance* instance, int32_t grid,
                                         mm_text** csv, size_t* violations) {
  if (!instance || !csv) return NullArgument("instance/csv");
  return Guard([&] {
    const auto sweep = mobmatch::sweep_truthfulness(instance->value, grid);
    *csv = NewText(mobmatch::emit_truthfulness_csv(sweep));
    if (violations) *violations = sweep.violations;
    return sweep.ok() ? MM_OK : MM_ERR_VIOLATION;
  });
}

}  // extern "C"
