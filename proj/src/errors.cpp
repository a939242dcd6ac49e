#include "srdcv/errors.hpp"

namespace srdcv {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::non_finite_value: return "non_finite_value";
        case Errc::too_short: return "too_short";
        case Errc::size_mismatch: return "size_mismatch";
        case Errc::index_out_of_range: return "index_out_of_range";
        case Errc::out_of_supported_range: return "out_of_supported_range";
        case Errc::too_few_rows: return "too_few_rows";
        case Errc::invalid_folds: return "invalid_folds";
        case Errc::invalid_config: return "invalid_config";
        case Errc::missing_scenario: return "missing_scenario";
        case Errc::method_set_mismatch: return "method_set_mismatch";
        case Errc::shape_mismatch: return "shape_mismatch";
        case Errc::unsupported_size: return "unsupported_size";
        case Errc::size_too_small: return "size_too_small";
        case Errc::unknown_column: return "unknown_column";
        case Errc::bad_input: return "bad_input";
        case Errc::io_error: return "io_error";
    }
    return "unknown";
}

} // namespace srdcv
