#include "oodeval/error.hpp"

namespace oodeval {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Input: return "E_INPUT";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Io: return "E_IO";
    case ErrorCode::UnsupportedMetric: return "E_UNSUPPORTED_METRIC";
    case ErrorCode::UndefinedCorrelation: return "E_UNDEFINED_CORRELATION";
    case ErrorCode::UnsupportedDistance: return "E_UNSUPPORTED_DISTANCE";
    case ErrorCode::Config: return "E_CONFIG";
    case ErrorCode::IllConditioned: return "E_ILL_CONDITIONED";
    case ErrorCode::TuningFailed: return "E_TUNING_FAILED";
    case ErrorCode::Leakage: return "E_LEAKAGE";
    case ErrorCode::Degenerate: return "E_DEGENERATE";
    case ErrorCode::Version: return "E_VERSION";
    case ErrorCode::Generation: return "E_GENERATION";
    }
    return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code)
{
}

} // namespace oodeval
