#include "cmsim/errors.hpp"

namespace cmsim {

Error::Error(std::string error_class, const std::string& message)
    : std::runtime_error(message), error_class_(std::move(error_class)) {}

LoadError::LoadError(LoadErrorKind kind, const std::string& message)
    : Error(std::string("LoadError.") + to_string(kind), message), kind_(kind) {}

const char* to_string(LoadErrorKind kind) noexcept {
    switch (kind) {
        case LoadErrorKind::MissingFile: return "MissingFile";
        case LoadErrorKind::MalformedRow: return "MalformedRow";
        case LoadErrorKind::NonPositivePrice: return "NonPositivePrice";
        case LoadErrorKind::Misaligned: return "Misaligned";
        case LoadErrorKind::InsufficientHistory: return "InsufficientHistory";
    }
    return "Unknown";
}

}  // namespace cmsim
