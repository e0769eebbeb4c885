#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mobmatch {

inline constexpr std::int64_t kMicrosPerUnit = 1'000'000;

// Exact signed amount of currency held as an integer count of micro-units
// (10^-6 of a unit). Every operation is checked: leaving the int64 range
// throws Error{kOverflow} instead of wrapping.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money FromMicros(std::int64_t micros) { return Money(micros); }
  static Money FromUnits(std::int64_t units);
  static constexpr Money Zero() { return Money(0); }

  // Accepts [-]digits[.digits] with at most six fractional digits.
  static Money Parse(std::string_view text);

  constexpr std::int64_t micros() const { return micros_; }

  constexpr bool is_zero() const { return micros_ == 0; }
  constexpr bool is_positive() const { return micros_ > 0; }
  constexpr bool is_negative() const { return micros_ < 0; }

  Money operator+(Money other) const;
  Money operator-(Money other) const;
  Money operator-() const;
  Money operator*(std::int64_t factor) const;
  Money& operator+=(Money other) { return *this = *this + other; }
  Money& operator-=(Money other) { return *this = *this - other; }

  // this * numerator / denominator, exact. Throws Error{kInexact} when the
  // result is not a whole number of micro-units.
  Money MulDiv(std::int64_t numerator, std::int64_t denominator) const;

  // Halves exactly; throws Error{kInexact} on an odd micro count.
  Money Half() const;

  constexpr auto operator<=>(const Money&) const = default;

  // Fixed six fractional digits, e.g. "-1.500000".
  std::string ToFixed() const;
  // Shortest exact decimal, e.g. "-1.5", "3", "0.000001".
  std::string ToShort() const;

 private:
  explicit constexpr Money(std::int64_t micros) : micros_(micros) {}

  std::int64_t micros_ = 0;
};

inline Money Max(Money a, Money b) { return a < b ? b : a; }
inline Money Min(Money a, Money b) { return a < b ? a : b; }

// A value in [0, 1] on the 10^-6 grid. Used for predispositions and
// operational types.
class Proportion {
 public:
  constexpr Proportion() = default;

  static Proportion FromMicros(std::int64_t micros);
  static Proportion Parse(std::string_view text);
  static constexpr Proportion One() { return Proportion(kMicrosPerUnit); }
  static constexpr Proportion Zero() { return Proportion(0); }

  constexpr std::int64_t micros() const { return micros_; }
  constexpr bool is_zero() const { return micros_ == 0; }

  constexpr auto operator<=>(const Proportion&) const = default;

  std::string ToShort() const;

 private:
  explicit constexpr Proportion(std::int64_t micros) : micros_(micros) {}

  std::int64_t micros_ = 0;
};

// proportion * amount, exact.
Money Scale(Proportion proportion, Money amount);

namespace decimal {

// Parses a decimal literal into micro-units. `what` names the field in
// diagnostics.
std::int64_t ParseMicros(std::string_view text, bool allow_negative,
                         std::string_view what);
std::string FormatMicros(std::int64_t micros, bool trim);

}  // namespace decimal

}  // namespace mobmatch
