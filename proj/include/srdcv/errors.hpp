#pragma once

#include <stdexcept>
#include <string>

namespace srdcv {

enum class Errc {
    non_finite_value,
    too_short,
    size_mismatch,
    index_out_of_range,
    out_of_supported_range,
    too_few_rows,
    invalid_folds,
    invalid_config,
    missing_scenario,
    method_set_mismatch,
    shape_mismatch,
    unsupported_size,
    size_too_small,
    unknown_column,
    bad_input,
    io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace srdcv
