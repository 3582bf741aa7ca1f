#include "divrank/csv.hpp"

#include <fstream>
#include <sstream>

#include "divrank/errors.hpp"

namespace divrank::csv {

std::vector<std::vector<std::string>> parse(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool inQuotes = false;
    bool fieldStarted = false;

    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        const char c = text[i];
        if (inQuotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    inQuotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                inQuotes = true;
                fieldStarted = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                fieldStarted = true;
                break;
            case '\r':
                break;
            case '\n':
                if (fieldStarted || !field.empty() || !row.empty()) {
                    row.push_back(std::move(field));
                    field.clear();
                    rows.push_back(std::move(row));
                    row.clear();
                    fieldStarted = false;
                }
                break;
            default:
                field.push_back(c);
                fieldStarted = true;
                break;
        }
    }
    if (inQuotes) throw ValidationError("malformed CSV: unterminated quoted field");
    if (fieldStarted || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::vector<std::string>> readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string escape(const std::string& field) {
    const bool needsQuotes =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needsQuotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace divrank::csv
