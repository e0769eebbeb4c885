#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobmatch/model.hpp"

namespace mobmatch {

inline constexpr int kSchemaVersion = 1;

// Line-oriented instance text. See docs/instance-format.md for the grammar.
// Errors throw mobmatch::Error with a "line N:" prefix; kinds are kParse for
// syntax/range problems and kOverflow for out-of-range amounts.
Instance parse_instance(std::string_view text);

// Canonical text form; parse_instance(serialize_instance(x)) == x.
std::string serialize_instance(const Instance& instance);

// Reads a file, or a bundled instance when `path` names one (e.g. "paper_siv")
// and no such file exists.
Instance load_instance(const std::string& path);

std::optional<std::string_view> builtin_instance_text(std::string_view name);
std::vector<std::string_view> builtin_instance_names();

// Whitespace split with '#' comments removed.
std::vector<std::string_view> tokenize_line(std::string_view line);

}  // namespace mobmatch
