#pragma once

#include <string>

namespace codemix {

/// Shortest decimal text that parses back to the same double ("inf",
/// "-inf" and "nan" for non-finite values). Every number the reports
/// write goes through here so the files agree digit for digit.
std::string format_number(double value);

}  // namespace codemix
