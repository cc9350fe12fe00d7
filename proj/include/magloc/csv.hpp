#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace magloc::csv {

/// Shortest decimal representation that round-trips to the same double
/// (std::to_chars). Infinities and NaN serialize as "inf"/"-inf"/"nan".
std::string format(double value);
std::string format(int value);
std::string format(std::int64_t value);
std::string format(std::uint64_t value);

/// Comma-separated, newline-terminated row writer.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace magloc::csv
