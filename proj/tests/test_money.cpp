#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <vector>

#include "mobmatch/error.hpp"
#include "mobmatch/money.hpp"

using mobmatch::Error;
using mobmatch::ErrorKind;
using mobmatch::Money;
using mobmatch::Proportion;

namespace {

ErrorKind KindOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInternal;
}

}  // namespace

TEST(Money, ParsesExactMicros) {
  EXPECT_EQ(Money::Parse("1").micros(), 1'000'000);
  EXPECT_EQ(Money::Parse("2.5").micros(), 2'500'000);
  EXPECT_EQ(Money::Parse("-0.000001").micros(), -1);
  EXPECT_EQ(Money::Parse("0.123456").micros(), 123'456);
  EXPECT_EQ(Money::Parse("+3.10").micros(), 3'100'000);
}

TEST(Money, SeventhDigitIsParseError) {
  EXPECT_EQ(KindOf([] { Money::Parse("0.3333333"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { Proportion::Parse("0.3333333"); }), ErrorKind::kParse);
}

TEST(Money, RejectsGarbage) {
  for (const char* bad : {"", "-", ".", "1.", ".5", "1e3", "1,5", "abc", "1.2.3", " 1"}) {
    EXPECT_EQ(KindOf([&] { Money::Parse(bad); }), ErrorKind::kParse) << bad;
  }
}

TEST(Money, FormatsSixDigits) {
  EXPECT_EQ(Money::Parse("4").ToFixed(), "4.000000");
  EXPECT_EQ(Money::Parse("-0.5").ToFixed(), "-0.500000");
  EXPECT_EQ(Money::Parse("-0.5").ToShort(), "-0.5");
  EXPECT_EQ(Money::Parse("12").ToShort(), "12");
  EXPECT_EQ(Money::FromMicros(1).ToFixed(), "0.000001");
}

TEST(Money, FormatParseRoundTrip) {
  const std::vector<std::int64_t> samples{0, 1, -1, 999'999, 1'000'000, -123'456'789,
                                          std::numeric_limits<std::int64_t>::max(),
                                          std::numeric_limits<std::int64_t>::min() + 1};
  for (std::int64_t m : samples) {
    const Money x = Money::FromMicros(m);
    EXPECT_EQ(Money::Parse(x.ToFixed()), x);
    EXPECT_EQ(Money::Parse(x.ToShort()), x);
  }
}

TEST(Money, CoversQuadrillionMicros) {
  const Money big = Money::FromMicros(1'000'000'000'000'000LL);
  EXPECT_EQ((big + big).micros(), 2'000'000'000'000'000LL);
  EXPECT_EQ((-big - big).micros(), -2'000'000'000'000'000LL);
}

TEST(Money, OverflowIsAnError) {
  const Money top = Money::FromMicros(std::numeric_limits<std::int64_t>::max());
  EXPECT_EQ(KindOf([&] { (void)(top + Money::FromMicros(1)); }), ErrorKind::kOverflow);
  EXPECT_EQ(KindOf([&] { (void)(-top - Money::FromMicros(2)); }), ErrorKind::kOverflow);
  EXPECT_EQ(KindOf([&] { (void)(top * 2); }), ErrorKind::kOverflow);
  EXPECT_EQ(KindOf([] { Money::Parse("99999999999999.999999"); }), ErrorKind::kOverflow);
}

TEST(Money, MulDivExactOrThrows) {
  EXPECT_EQ(Money::Parse("10").MulDiv(1, 2), Money::Parse("5"));
  EXPECT_EQ(Money::Parse("0.000003").MulDiv(1, 3), Money::FromMicros(1));
  EXPECT_EQ(KindOf([] { (void)Money::FromMicros(1).Half(); }), ErrorKind::kInexact);
}

TEST(Proportion, RangeChecked) {
  EXPECT_EQ(Proportion::Parse("1").micros(), 1'000'000);
  EXPECT_EQ(Proportion::Parse("0").micros(), 0);
  EXPECT_EQ(Proportion::Parse("0.25").micros(), 250'000);
  EXPECT_EQ(KindOf([] { Proportion::Parse("1.000001"); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([] { Proportion::Parse("-0.1"); }), ErrorKind::kParse);
}

TEST(Proportion, ScaleIsExact) {
  EXPECT_EQ(mobmatch::Scale(Proportion::Parse("0.5"), Money::Parse("10")), Money::Parse("5"));
  EXPECT_EQ(mobmatch::Scale(Proportion::Parse("0.37"), Money::Parse("3")),
            Money::Parse("1.11"));
  // 0.000001 * 0.5 has no micro-unit representation
  EXPECT_EQ(KindOf([] {
              mobmatch::Scale(Proportion::Parse("0.5"), Money::FromMicros(1));
            }),
            ErrorKind::kInexact);
}
