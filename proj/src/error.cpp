#include "thermonet/error.hpp"

namespace thermonet {

Error::Error(ErrorKind kind, std::string tag, const std::string& detail)
    : std::runtime_error(tag + ": " + detail), kind_(kind), tag_(std::move(tag)), detail_(detail) {}

void fail_usage(std::string tag, const std::string& detail) {
    throw Error(ErrorKind::Usage, std::move(tag), detail);
}

void fail_data(std::string tag, const std::string& detail) {
    throw Error(ErrorKind::Data, std::move(tag), detail);
}

void fail_internal(std::string tag, const std::string& detail) {
    throw Error(ErrorKind::Internal, std::move(tag), detail);
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage: return 2;
        case ErrorKind::Data: return 3;
        case ErrorKind::Internal: return 4;
    }
    return 4;
}

}  // namespace thermonet
