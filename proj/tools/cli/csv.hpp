#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace coupled::cli {

/// RFC 4180 writer: CRLF line ends, fields quoted only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

[[nodiscard]] std::string csv_field(std::string_view text);

/// 17 significant digits; non-finite values as "inf", "-inf" or "nan".
[[nodiscard]] std::string csv_number(double v);

/// Parses RFC 4180 text (LF or CRLF line ends) into records.
[[nodiscard]] std::vector<std::vector<std::string>> parse_csv(std::istream& is);

}  // namespace coupled::cli
