#ifndef AUTOREDUX_ERROR_HPP
#define AUTOREDUX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace autoredux {

// All failures carry a short machine-readable code (used by the CLI exit
// line) plus a human-readable detail message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace autoredux

#endif
