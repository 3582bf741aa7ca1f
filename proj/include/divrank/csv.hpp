#ifndef DIVRANK_CSV_HPP
#define DIVRANK_CSV_HPP

#include <string>
#include <vector>

namespace divrank::csv {

// RFC-4180 parsing: quoted fields may contain commas, doubled quotes and
// newlines. CRLF and LF are both accepted.
std::vector<std::vector<std::string>> parse(const std::string& text);
std::vector<std::vector<std::string>> readFile(const std::string& path);

// Quotes a field only when it needs quoting.
std::string escape(const std::string& field);

} // namespace divrank::csv

#endif
