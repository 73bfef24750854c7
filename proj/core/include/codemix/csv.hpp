#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace codemix::csv {

/// One parsed record and the physical line it started on (1-based).
struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

/// RFC 4180 reader: comma delimiter, double-quote quoting with "" escapes,
/// quoted fields may span lines, CRLF or LF record terminators. A leading
/// UTF-8 byte-order mark is dropped. Throws DataError on an unterminated
/// quoted field.
std::vector<Record> parse(std::istream& in);
std::vector<Record> parse(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

}  // namespace codemix::csv
