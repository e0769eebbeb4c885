#include "mobmatch/instance_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mobmatch/error.hpp"

namespace mobmatch {

namespace {

struct LineError {
  std::size_t line;
  [[noreturn]] void Fail(const std::string& what, ErrorKind kind = ErrorKind::kParse) const {
    throw Error(kind, "line " + std::to_string(line) + ": " + what);
  }
};

bool ValidLabel(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

std::int64_t ParseInt(std::string_view s, const LineError& at, const char* field) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    at.Fail(std::string("malformed ") + field + " '" + std::string(s) + "'");
  }
  return value;
}

// Runs a decimal conversion, re-tagging its error with the line and field.
template <typename Fn>
auto WithField(const LineError& at, const char* field, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    const ErrorKind kind =
        e.kind() == ErrorKind::kOverflow ? ErrorKind::kOverflow : ErrorKind::kParse;
    at.Fail(std::string(field) + ": " + e.what(), kind);
  }
}

struct PendingTraveler {
  Traveler traveler;
  bool short_form = false;
  std::size_t line = 0;
};

struct PendingProvider {
  Provider provider;
  bool short_form = false;
  std::size_t line = 0;
};

}  // namespace

std::vector<std::string_view> tokenize_line(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
      ++pos;
    }
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

Instance parse_instance(std::string_view text) {
  bool have_version = false;
  std::optional<PaymentBounds> bounds;
  std::vector<PendingProvider> providers;
  std::vector<PendingTraveler> travelers;
  std::vector<std::optional<std::vector<Money>>> payoff_rows;
  bool any_payoff = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const LineError at{line_no};
    const auto tok = tokenize_line(line);
    if (tok.empty()) continue;
    const std::string_view key = tok[0];

    if (!have_version) {
      if (key != "version" || tok.size() != 2) at.Fail("the first directive must be 'version 1'");
      const auto v = ParseInt(tok[1], at, "version");
      if (v != kSchemaVersion) at.Fail("unsupported schema version " + std::to_string(v));
      have_version = true;
      continue;
    }
    if (key == "version") {
      at.Fail("duplicate version directive");
    } else if (key == "bounds") {
      if (bounds) at.Fail("duplicate bounds directive");
      if (tok.size() != 3) at.Fail("expected 'bounds <lower> <upper>'");
      PaymentBounds b;
      b.lower = WithField(at, "bounds", [&] { return Money::Parse(tok[1]); });
      b.upper = WithField(at, "bounds", [&] { return Money::Parse(tok[2]); });
      if (b.lower > b.upper) at.Fail("bounds lower exceeds upper");
      bounds = b;
    } else if (key == "provider") {
      if (!travelers.empty()) at.Fail("providers must precede travelers");
      if (tok.size() != 3 && tok.size() != 5) {
        at.Fail("expected 'provider <label> <capacity> [<delta> <cost_scale>]'");
      }
      if (!ValidLabel(tok[1])) at.Fail("invalid provider label '" + std::string(tok[1]) + "'");
      PendingProvider p;
      p.line = line_no;
      p.provider.label = std::string(tok[1]);
      const auto capacity = ParseInt(tok[2], at, "capacity");
      if (capacity < 1 || capacity > 1'000'000'000) at.Fail("capacity must be in [1, 1e9]");
      p.provider.capacity = static_cast<int>(capacity);
      if (tok.size() == 5) {
        p.provider.op_type = WithField(at, "delta", [&] { return Proportion::Parse(tok[3]); });
        if (p.provider.op_type.is_zero()) at.Fail("delta: must be in (0, 1]");
        p.provider.cost_scale = WithField(at, "cost_scale", [&] { return Money::Parse(tok[4]); });
        if (p.provider.cost_scale.is_negative()) at.Fail("cost_scale: must be >= 0");
      } else {
        p.short_form = true;
      }
      providers.push_back(std::move(p));
    } else if (key == "traveler") {
      if (any_payoff) at.Fail("travelers must precede payoff rows");
      if (providers.empty()) at.Fail("travelers must follow the providers");
      const std::size_t J = providers.size();
      if (tok.size() != 2 && tok.size() != 3 + J) {
        at.Fail("expected 'traveler <group> [<willingness_scale> <theta x " + std::to_string(J) +
                ">]'");
      }
      if (!ValidLabel(tok[1])) at.Fail("invalid traveler group '" + std::string(tok[1]) + "'");
      PendingTraveler t;
      t.line = line_no;
      t.traveler.group = std::string(tok[1]);
      if (tok.size() == 2) {
        t.short_form = true;
        t.traveler.predispositions.assign(J, Proportion::Zero());
      } else {
        t.traveler.willingness_scale =
            WithField(at, "willingness_scale", [&] { return Money::Parse(tok[2]); });
        if (t.traveler.willingness_scale.is_negative()) {
          at.Fail("willingness_scale: must be >= 0");
        }
        for (std::size_t j = 0; j < J; ++j) {
          t.traveler.predispositions.push_back(
              WithField(at, "theta", [&] { return Proportion::Parse(tok[3 + j]); }));
        }
      }
      travelers.push_back(std::move(t));
    } else if (key == "payoff") {
      if (travelers.empty()) at.Fail("payoff rows must follow the travelers");
      const std::size_t J = providers.size();
      if (tok.size() != 2 + J) {
        at.Fail("expected 'payoff <traveler> <a x " + std::to_string(J) + ">'");
      }
      const auto row = ParseInt(tok[1], at, "traveler index");
      if (row < 0 || static_cast<std::size_t>(row) >= travelers.size()) {
        at.Fail("payoff row index " + std::to_string(row) + " out of range");
      }
      payoff_rows.resize(travelers.size());
      if (payoff_rows[row]) at.Fail("duplicate payoff row " + std::to_string(row));
      std::vector<Money> values;
      for (std::size_t j = 0; j < J; ++j) {
        values.push_back(WithField(at, "payoff", [&] { return Money::Parse(tok[2 + j]); }));
      }
      payoff_rows[row] = std::move(values);
      any_payoff = true;
    } else {
      at.Fail("unknown directive '" + std::string(key) + "'");
    }
  }

  const LineError at_end{line_no};
  if (!have_version) at_end.Fail("missing version directive");
  if (!bounds) at_end.Fail("missing bounds directive");
  if (providers.empty()) at_end.Fail("no providers");
  if (travelers.empty()) at_end.Fail("no travelers");

  std::optional<UtilityMatrix> override_matrix;
  if (any_payoff) {
    std::vector<std::vector<Money>> rows;
    for (std::size_t i = 0; i < travelers.size(); ++i) {
      if (!payoff_rows[i]) at_end.Fail("missing payoff row " + std::to_string(i));
      rows.push_back(*payoff_rows[i]);
    }
    override_matrix = UtilityMatrix::FromRows(rows);
  } else {
    for (const auto& p : providers) {
      if (p.short_form) {
        LineError{p.line}.Fail("provider needs <delta> <cost_scale> without payoff rows");
      }
    }
    for (const auto& t : travelers) {
      if (t.short_form) {
        LineError{t.line}.Fail("traveler needs <willingness_scale> and thetas without payoff rows");
      }
    }
  }

  std::vector<Traveler> ts;
  for (auto& t : travelers) ts.push_back(std::move(t.traveler));
  std::vector<Provider> ps;
  for (auto& p : providers) ps.push_back(std::move(p.provider));
  return Instance(std::move(ts), std::move(ps), *bounds, std::move(override_matrix));
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  const bool fixed = instance.has_override();
  out << "version " << kSchemaVersion << "\n";
  out << "bounds " << instance.payment_bounds().lower.ToShort() << " "
      << instance.payment_bounds().upper.ToShort() << "\n";
  for (const auto& p : instance.providers()) {
    if (!ValidLabel(p.label)) {
      throw Error(ErrorKind::kInvalidArgument, "provider label '" + p.label + "' not writable");
    }
    out << "provider " << p.label << " " << p.capacity;
    if (!fixed || p.op_type != Proportion::One() || !p.cost_scale.is_zero()) {
      out << " " << p.op_type.ToShort() << " " << p.cost_scale.ToShort();
    }
    out << "\n";
  }
  for (const auto& t : instance.travelers()) {
    if (!ValidLabel(t.group)) {
      throw Error(ErrorKind::kInvalidArgument, "traveler group '" + t.group + "' not writable");
    }
    out << "traveler " << t.group;
    const bool defaults = t.willingness_scale.is_zero() &&
                          t.max_predisposition() == Proportion::Zero();
    if (!fixed || !defaults) {
      out << " " << t.willingness_scale.ToShort();
      for (const auto& theta : t.predispositions) out << " " << theta.ToShort();
    }
    out << "\n";
  }
  if (fixed) {
    const UtilityMatrix& a = *instance.payoff_override();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      out << "payoff " << i;
      for (std::size_t j = 0; j < a.cols(); ++j) out << " " << a.at(i, j).ToShort();
      out << "\n";
    }
  }
  return out.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (auto text = builtin_instance_text(path)) return parse_instance(*text);
    throw Error(ErrorKind::kParse, "cannot open instance file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace mobmatch
