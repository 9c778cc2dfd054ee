#include "csv.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

namespace {

using namespace coupled::cli;

TEST(CsvWriter, PlainFieldsUseCommasAndCrlf) {
  std::ostringstream os;
  CsvWriter w(os);
  w.row({"a", "b", ""});
  w.row({"1"});
  EXPECT_EQ(os.str(), "a,b,\r\n1\r\n");
}

TEST(CsvWriter, QuotesOnlyFieldsThatNeedIt) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_field("cr\r"), "\"cr\r\"");
}

TEST(CsvNumber, SeventeenDigitsAndNonFiniteNames) {
  EXPECT_EQ(csv_number(0.1), "0.10000000000000001");
  EXPECT_EQ(csv_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(csv_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(csv_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  for (const double v : {1.0 / 3.0, -2.5e-300, 6.02214076e23, 2.2250738585072014e-308, 1.7976931348623157e308}) {
    EXPECT_EQ(std::stod(csv_number(v)), v);
  }
}

TEST(ParseCsv, RoundTripsAwkwardFields) {
  const std::vector<std::vector<std::string>> rows = {
      {"algorithm", "p", "note"}, {"rbki", "", "a,b"}, {"x", "\"q\"", "line1\r\nline2"}, {"", "", ""}};
  std::ostringstream os;
  CsvWriter w(os);
  for (const auto& r : rows) w.row(r);
  std::istringstream is(os.str());
  EXPECT_EQ(parse_csv(is), rows);
}

TEST(ParseCsv, AcceptsLfEndingsAndMissingFinalNewline) {
  std::istringstream is("a,b\n1,2");
  const auto rows = parse_csv(is);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "2"}));
}

TEST(ParseCsv, EmptyInputHasNoRecords) {
  std::istringstream is("");
  EXPECT_TRUE(parse_csv(is).empty());
}

}  // namespace
