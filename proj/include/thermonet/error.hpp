#pragma once

#include <stdexcept>
#include <string>

namespace thermonet {

/// Failure classes. Each maps onto one CLI exit status.
enum class ErrorKind {
    Usage,     ///< bad arguments or violated preconditions (exit 2)
    Data,      ///< input data that cannot be processed (exit 3)
    Internal,  ///< broken invariant inside the library (exit 4)
};

/// Library exception. `tag()` is a short kebab-case identifier that stays
/// stable across releases and is what scripts should match on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string tag, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& tag() const noexcept { return tag_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string tag_;
    std::string detail_;
};

[[noreturn]] void fail_usage(std::string tag, const std::string& detail);
[[noreturn]] void fail_data(std::string tag, const std::string& detail);
[[noreturn]] void fail_internal(std::string tag, const std::string& detail);

int exit_code(ErrorKind kind) noexcept;

}  // namespace thermonet
