#include "mobmatch/report.hpp"

#include <charconv>
#include <sstream>

#include "mobmatch/error.hpp"
#include "mobmatch/instance_format.hpp"

namespace mobmatch {

namespace {

std::string MatchText(const Match& m) { return m ? std::to_string(*m) : "-"; }

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  if (line == 0) throw Error(ErrorKind::kParse, what);
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

std::size_t ParseIndex(std::string_view s, std::size_t limit, std::size_t line,
                       const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(line, std::string("malformed ") + what + " index '" + std::string(s) + "'");
  }
  if (value >= limit) Fail(line, std::string(what) + " index " + std::to_string(value) + " out of range");
  return value;
}

template <typename T, typename Fn>
T ParseField(std::size_t line, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    Fail(line, e.what());
  }
}

// Labels are restricted to [A-Za-z0-9_.-], so quoting only guards against
// labels set through the library API.
std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const auto tok = tokenize_line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!tok.empty()) fn(line_no, tok);
  }
}

}  // namespace

std::string format_solution(const Instance& instance, const SolveOutcome& outcome) {
  std::ostringstream out;
  out << "version " << kSchemaVersion << "\n";
  out << "objective " << outcome.assignment.objective.ToFixed() << "\n";
  out << "gap " << outcome.dual.gap.ToFixed() << "\n";
  out << "matched " << outcome.assignment.num_matched() << " " << instance.num_travelers()
      << "\n";
  out << "balanced " << (outcome.balance.balanced() ? "true" : "false") << " "
      << outcome.balance.total_capacity << " " << outcome.balance.travelers << "\n";
  out << format_assignment(outcome.assignment);
  for (std::size_t i = 0; i < outcome.dual.phi.size(); ++i) {
    out << "phi " << i << " " << outcome.dual.phi[i].ToFixed() << "\n";
  }
  for (std::size_t j = 0; j < outcome.dual.psi.size(); ++j) {
    out << "psi " << j << " " << outcome.dual.psi[j].ToFixed() << "\n";
  }
  for (const auto& [pair, t] : outcome.payments.payments) {
    out << "payment " << pair.first << " " << pair.second << " " << t.ToFixed() << "\n";
  }
  for (const auto& w : outcome.payments.warnings) out << "warning " << w << "\n";
  return out.str();
}

std::string format_assignment(const Assignment& assignment) {
  std::ostringstream out;
  for (std::size_t i = 0; i < assignment.matches.size(); ++i) {
    out << "match " << i << " " << MatchText(assignment.matches[i]) << "\n";
  }
  return out.str();
}

Certificate parse_certificate(std::string_view text, std::size_t travelers,
                              std::size_t providers) {
  std::vector<std::optional<Match>> matches(travelers);
  std::vector<std::optional<Money>> phi(travelers);
  std::vector<std::optional<Money>> psi(providers);
  ForEachLine(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    const std::string_view key = tok[0];
    if (key == "match") {
      if (tok.size() != 3) Fail(line, "expected 'match <traveler> <provider|->'");
      const auto i = ParseIndex(tok[1], travelers, line, "traveler");
      if (matches[i]) Fail(line, "duplicate match for traveler " + std::to_string(i));
      // Out-of-range providers are kept so the audit can flag them.
      matches[i] = tok[2] == "-" ? Match{}
                                 : Match{ParseIndex(tok[2], static_cast<std::size_t>(-1), line,
                                                    "provider")};
    } else if (key == "phi" || key == "psi") {
      if (tok.size() != 3) Fail(line, "expected '" + std::string(key) + " <index> <amount>'");
      const bool is_phi = key == "phi";
      auto& slot = is_phi ? phi : psi;
      const auto k = ParseIndex(tok[1], slot.size(), line, is_phi ? "traveler" : "provider");
      if (slot[k]) Fail(line, "duplicate " + std::string(key) + " " + std::to_string(k));
      slot[k] = ParseField<Money>(line, [&] { return Money::Parse(tok[2]); });
    }
  });
  Certificate cert;
  for (std::size_t i = 0; i < travelers; ++i) {
    if (!matches[i]) Fail(0, "certificate lacks a match line for traveler " + std::to_string(i));
    if (!phi[i]) Fail(0, "certificate lacks phi for traveler " + std::to_string(i));
    cert.matches.push_back(*matches[i]);
    cert.dual.phi.push_back(*phi[i]);
  }
  for (std::size_t j = 0; j < providers; ++j) {
    if (!psi[j]) Fail(0, "certificate lacks psi for provider " + std::to_string(j));
    cert.dual.psi.push_back(*psi[j]);
  }
  return cert;
}

std::string format_audit(const AuditReport& stability, const AuditReport& slackness) {
  std::ostringstream out;
  out << "stable " << (stability.ok ? "true" : "false") << "\n";
  out << "complementary_slackness " << (slackness.ok ? "true" : "false") << "\n";
  out << "primal_value " << stability.primal_value.ToFixed() << "\n";
  out << "dual_value " << stability.dual_value.ToFixed() << "\n";
  auto emit = [&out](const char* section, const AuditReport& report) {
    for (const auto& v : report.violations) {
      out << "violation " << section << " " << ViolationKindName(v.kind)
          << " traveler=" << (v.traveler ? std::to_string(*v.traveler) : "-")
          << " provider=" << (v.provider ? std::to_string(*v.provider) : "-")
          << " amount=" << v.amount.ToFixed() << "\n";
    }
  };
  emit("stability", stability);
  emit("slackness", slackness);
  return out.str();
}

std::string format_mechanism(const MechanismOutcome& outcome) {
  std::ostringstream out;
  out << "version " << kSchemaVersion << "\n";
  out << "objective " << outcome.assignment.objective.ToFixed() << "\n";
  out << format_assignment(outcome.assignment);
  for (std::size_t i = 0; i < outcome.traveler_charges.size(); ++i) {
    out << "charge " << i << " " << outcome.traveler_charges[i].ToFixed() << "\n";
  }
  for (std::size_t j = 0; j < outcome.provider_compensations.size(); ++j) {
    out << "compensation " << j << " " << outcome.provider_compensations[j].ToFixed() << "\n";
  }
  for (std::size_t i = 0; i < outcome.traveler_utilities.size(); ++i) {
    out << "traveler_utility " << i << " " << outcome.traveler_utilities[i].ToFixed() << "\n";
  }
  for (std::size_t j = 0; j < outcome.provider_utilities.size(); ++j) {
    out << "provider_utility " << j << " " << outcome.provider_utilities[j].ToFixed() << "\n";
  }
  out << "budget " << outcome.budget.ToFixed() << "\n";
  return out.str();
}

std::vector<Report> parse_reports(std::string_view text, std::size_t travelers,
                                  std::size_t providers) {
  std::vector<Report> reports;
  ForEachLine(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    const std::string_view key = tok[0];
    if (key == "traveler") {
      if (tok.size() != 2 + providers) {
        Fail(line, "expected 'traveler <i> <theta x " + std::to_string(providers) + ">'");
      }
      Report r{{AgentKind::kTraveler, ParseIndex(tok[1], travelers, line, "traveler")}, {}};
      for (std::size_t j = 0; j < providers; ++j) {
        r.type.push_back(ParseField<Proportion>(line, [&] { return Proportion::Parse(tok[2 + j]); }));
      }
      reports.push_back(std::move(r));
    } else if (key == "provider") {
      if (tok.size() != 3) Fail(line, "expected 'provider <j> <delta>'");
      Report r{{AgentKind::kProvider, ParseIndex(tok[1], providers, line, "provider")}, {}};
      r.type.push_back(ParseField<Proportion>(line, [&] { return Proportion::Parse(tok[2]); }));
      if (r.type[0].is_zero()) Fail(line, "provider type must be in (0, 1]");
      reports.push_back(std::move(r));
    } else {
      Fail(line, "unknown report directive '" + std::string(key) + "'");
    }
  });
  return reports;
}

std::string emit_assignment_csv(const Instance& instance, const SolveOutcome& outcome) {
  std::ostringstream out;
  out << "traveler,group,provider,payoff,phi,payment\n";
  for (std::size_t i = 0; i < outcome.assignment.matches.size(); ++i) {
    const Match& m = outcome.assignment.matches[i];
    if (!m) continue;
    const auto t = outcome.payments.at(i, *m);
    out << i << "," << CsvField(instance.traveler(i).group) << "," << *m << ","
        << outcome.matrix.at(i, *m).ToFixed() << "," << outcome.dual.phi[i].ToFixed() << ","
        << (t ? t->ToFixed() : "") << "\n";
  }
  out << "\n";
  out << "provider,label,load,capacity,psi\n";
  const std::vector<int> loads = outcome.assignment.loads(instance.num_providers());
  for (std::size_t j = 0; j < instance.num_providers(); ++j) {
    out << j << "," << CsvField(instance.provider(j).label) << "," << loads[j] << ","
        << instance.provider(j).capacity << "," << outcome.dual.psi[j].ToFixed() << "\n";
  }
  return out.str();
}

std::string emit_participation_csv(const ParticipationReport& report) {
  std::ostringstream out;
  out << "instance,travelers,providers,min_traveler_utility,min_provider_utility,"
         "min_charge,min_compensation,budget,efficient,violations\n";
  for (const auto& r : report.rows) {
    out << r.instance << "," << r.travelers << "," << r.providers << ","
        << r.min_traveler_utility.ToFixed() << "," << r.min_provider_utility.ToFixed() << ","
        << r.min_charge.ToFixed() << "," << r.min_compensation.ToFixed() << ","
        << r.budget.ToFixed() << "," << (r.efficient ? "true" : "false") << ","
        << r.violations << "\n";
  }
  return out.str();
}

std::string emit_truthfulness_csv(const TruthfulnessSweep& sweep) {
  std::ostringstream out;
  out << "instance,agent_kind,agent,grid_points,truthful_utility,best_misreport_utility,"
         "max_regret,violations\n";
  for (const auto& row : sweep.rows) {
    const auto& r = row.report;
    out << row.instance << "," << (r.agent.kind == AgentKind::kTraveler ? "traveler" : "provider")
        << "," << r.agent.id << "," << r.grid_points << "," << r.truthful_utility.ToFixed()
        << "," << r.best_misreport_utility.ToFixed() << "," << r.max_regret.ToFixed() << ","
        << r.violations << "\n";
  }
  return out.str();
}

}  // namespace mobmatch
