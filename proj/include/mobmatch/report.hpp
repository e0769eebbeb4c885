#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mobmatch/duality.hpp"
#include "mobmatch/harness.hpp"
#include "mobmatch/mechanism.hpp"
#include "mobmatch/pipeline.hpp"

namespace mobmatch {

// Text written by `solve`. Its match/phi/psi lines double as the
// certificate format read back by `audit`.
std::string format_solution(const Instance& instance, const SolveOutcome& outcome);

// Match lines only, as written by `oracle`.
std::string format_assignment(const Assignment& assignment);

struct Certificate {
  std::vector<Match> matches;
  DualSolution dual;
};

// Reads match/phi/psi lines; other keys (objective, payment, ...) are
// ignored. Every traveler needs a match and a phi line, every provider a
// psi line. Throws Error{kParse}.
Certificate parse_certificate(std::string_view text, std::size_t travelers,
                              std::size_t providers);

std::string format_audit(const AuditReport& stability, const AuditReport& slackness);

std::string format_mechanism(const MechanismOutcome& outcome);

// `traveler <i> <theta...>` / `provider <j> <delta>` lines. Agents without
// a line are left out; callers decide how to fill them.
std::vector<Report> parse_reports(std::string_view text, std::size_t travelers,
                                  std::size_t providers);

// One row per matched traveler, then a per-provider utilization block.
std::string emit_assignment_csv(const Instance& instance, const SolveOutcome& outcome);

std::string emit_participation_csv(const ParticipationReport& report);
std::string emit_truthfulness_csv(const TruthfulnessSweep& sweep);

}  // namespace mobmatch
