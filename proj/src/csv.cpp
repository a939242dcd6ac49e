#include "srdcv/csv.hpp"

#include <fstream>
#include <sstream>

namespace srdcv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

} // namespace

DataMatrix read_data_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(Errc::bad_input, "empty CSV");
    DataMatrix m;
    for (const auto& name : split_line(line)) {
        std::string t = trim(name);
        if (t.empty()) fail(Errc::bad_input, "empty column name in CSV header");
        m.column_names.push_back(t);
    }
    m.columns.assign(m.column_names.size(), {});

    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != m.column_names.size())
            fail(Errc::bad_input, "line " + std::to_string(lineno) + ": expected " +
                                      std::to_string(m.column_names.size()) + " fields, got " +
                                      std::to_string(fields.size()));
        for (size_t c = 0; c < fields.size(); ++c) {
            std::string f = trim(fields[c]);
            try {
                size_t pos = 0;
                double v = std::stod(f, &pos);
                if (pos != f.size()) throw std::invalid_argument(f);
                m.columns[c].push_back(v);
            } catch (const std::exception&) {
                fail(Errc::bad_input,
                     "line " + std::to_string(lineno) + ": non-numeric value '" + f + "'");
            }
        }
        ++m.rows;
    }
    m.validate();
    return m;
}

DataMatrix read_data_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
    return read_data_csv(in);
}

} // namespace srdcv
