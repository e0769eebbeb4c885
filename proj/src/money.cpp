#include "mobmatch/money.hpp"

#include <cstdlib>
#include <limits>

#include "mobmatch/error.hpp"

namespace mobmatch {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kInexact: return "inexact";
    case ErrorKind::kTooLarge: return "too-large";
    case ErrorKind::kNotOptimal: return "not-optimal";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

namespace {

[[noreturn]] void ThrowOverflow(const char* op) {
  throw Error(ErrorKind::kOverflow, std::string("money overflow in ") + op);
}

}  // namespace

Money Money::FromUnits(std::int64_t units) {
  std::int64_t micros = 0;
  if (__builtin_mul_overflow(units, kMicrosPerUnit, &micros)) {
    ThrowOverflow("FromUnits");
  }
  return Money(micros);
}

Money Money::Parse(std::string_view text) {
  return Money(decimal::ParseMicros(text, /*allow_negative=*/true, "money"));
}

Money Money::operator+(Money other) const {
  std::int64_t out = 0;
  if (__builtin_add_overflow(micros_, other.micros_, &out)) ThrowOverflow("+");
  return Money(out);
}

Money Money::operator-(Money other) const {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(micros_, other.micros_, &out)) ThrowOverflow("-");
  return Money(out);
}

Money Money::operator-() const {
  if (micros_ == std::numeric_limits<std::int64_t>::min()) ThrowOverflow("negate");
  return Money(-micros_);
}

Money Money::operator*(std::int64_t factor) const {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(micros_, factor, &out)) ThrowOverflow("*");
  return Money(out);
}

Money Money::MulDiv(std::int64_t numerator, std::int64_t denominator) const {
  if (denominator == 0) {
    throw Error(ErrorKind::kInvalidArgument, "MulDiv by zero denominator");
  }
  __extension__ using Wide = __int128;
  const Wide product = static_cast<Wide>(micros_) * numerator;
  if (product % denominator != 0) {
    throw Error(ErrorKind::kInexact,
                "product " + ToShort() + " * " + std::to_string(numerator) +
                    "/" + std::to_string(denominator) +
                    " is not a whole number of micro-units");
  }
  const Wide quotient = product / denominator;
  if (quotient > std::numeric_limits<std::int64_t>::max() ||
      quotient < std::numeric_limits<std::int64_t>::min()) {
    ThrowOverflow("MulDiv");
  }
  return Money(static_cast<std::int64_t>(quotient));
}

Money Money::Half() const { return MulDiv(1, 2); }

std::string Money::ToFixed() const { return decimal::FormatMicros(micros_, false); }
std::string Money::ToShort() const { return decimal::FormatMicros(micros_, true); }

Proportion Proportion::FromMicros(std::int64_t micros) {
  if (micros < 0 || micros > kMicrosPerUnit) {
    throw Error(ErrorKind::kInvalidArgument,
                "proportion " + decimal::FormatMicros(micros, true) +
                    " outside [0, 1]");
  }
  return Proportion(micros);
}

Proportion Proportion::Parse(std::string_view text) {
  return FromMicros(decimal::ParseMicros(text, /*allow_negative=*/false, "proportion"));
}

std::string Proportion::ToShort() const { return decimal::FormatMicros(micros_, true); }

Money Scale(Proportion proportion, Money amount) {
  return amount.MulDiv(proportion.micros(), kMicrosPerUnit);
}

namespace decimal {

std::int64_t ParseMicros(std::string_view text, bool allow_negative,
                         std::string_view what) {
  const std::string field(what);
  if (text.empty()) throw Error(ErrorKind::kParse, "empty " + field);
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    if (negative && !allow_negative) {
      throw Error(ErrorKind::kParse, field + " may not be negative: '" +
                                         std::string(text) + "'");
    }
    pos = 1;
  }
  std::int64_t whole = 0;
  std::size_t int_digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    if (__builtin_mul_overflow(whole, 10, &whole) ||
        __builtin_add_overflow(whole, text[pos] - '0', &whole)) {
      throw Error(ErrorKind::kOverflow, field + " out of range: '" + std::string(text) + "'");
    }
    ++pos;
    ++int_digits;
  }
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      ++frac_digits;
      if (frac_digits > 6) {
        throw Error(ErrorKind::kParse, field + " has more than 6 fractional digits: '" +
                                           std::string(text) + "'");
      }
      frac = frac * 10 + (text[pos] - '0');
      ++pos;
    }
    if (frac_digits == 0) {
      throw Error(ErrorKind::kParse, "missing fractional digits in " + field +
                                         ": '" + std::string(text) + "'");
    }
  }
  if (pos != text.size() || int_digits == 0) {
    throw Error(ErrorKind::kParse, "malformed " + field + ": '" + std::string(text) + "'");
  }
  for (std::size_t k = frac_digits; k < 6; ++k) frac *= 10;
  std::int64_t micros = 0;
  if (__builtin_mul_overflow(whole, kMicrosPerUnit, &micros) ||
      __builtin_add_overflow(micros, frac, &micros)) {
    throw Error(ErrorKind::kOverflow, field + " out of range: '" + std::string(text) + "'");
  }
  return negative ? -micros : micros;
}

std::string FormatMicros(std::int64_t micros, bool trim) {
  const bool negative = micros < 0;
  // Magnitude via unsigned to survive INT64_MIN.
  const std::uint64_t mag = negative ? 0 - static_cast<std::uint64_t>(micros)
                                     : static_cast<std::uint64_t>(micros);
  std::string frac = std::to_string(mag % kMicrosPerUnit);
  frac.insert(0, 6 - frac.size(), '0');
  if (trim) {
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
  }
  std::string out = negative ? "-" : "";
  out += std::to_string(mag / kMicrosPerUnit);
  if (!frac.empty()) out += "." + frac;
  return out;
}

}  // namespace decimal

}  // namespace mobmatch
