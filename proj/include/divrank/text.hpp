#ifndef DIVRANK_TEXT_HPP
#define DIVRANK_TEXT_HPP

#include <string>
#include <unordered_set>
#include <vector>

namespace divrank {

// Lowercases, splits on any non-alphanumeric byte, and drops tokens shorter
// than two characters. ASCII only; multi-byte input simply splits at the
// non-ASCII bytes.
std::vector<std::string> tokenize(const std::string& text);

// Porter (1980) suffix-stripping stemmer. Expects a lowercase token.
std::string porterStem(const std::string& word);

// The frozen stop-word list compiled into the library. One word per line,
// identical to data/stopwords.txt in the repository.
const std::unordered_set<std::string>& defaultStopwords();

// Loads a stop-word list: one token per line, blank lines ignored.
std::unordered_set<std::string> loadStopwords(const std::string& path);

} // namespace divrank

#endif
