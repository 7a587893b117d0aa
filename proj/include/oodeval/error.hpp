#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oodeval {

// Stable short codes; the CLI prints them verbatim so callers can match on them.
enum class ErrorCode {
    Input,                 // E_INPUT
    Parse,                 // E_PARSE
    Io,                    // E_IO
    UnsupportedMetric,     // E_UNSUPPORTED_METRIC
    UndefinedCorrelation,  // E_UNDEFINED_CORRELATION
    UnsupportedDistance,   // E_UNSUPPORTED_DISTANCE
    Config,                // E_CONFIG
    IllConditioned,        // E_ILL_CONDITIONED
    TuningFailed,          // E_TUNING_FAILED
    Leakage,               // E_LEAKAGE
    Degenerate,            // E_DEGENERATE
    Version,               // E_VERSION
    Generation,            // E_GENERATION
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace oodeval
