#pragma once

#include <iosfwd>
#include <string>

#include "srdcv/ranking.hpp"

namespace srdcv {

// Strict numeric CSV: header row of column names, then >= 2 rows of finite
// numbers with '.' decimals; UTF-8, LF or CRLF, no quoting.
DataMatrix read_data_csv(std::istream& in);
DataMatrix read_data_csv(const std::string& path);

} // namespace srdcv
