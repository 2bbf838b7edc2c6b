#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace goodsemi {

// Domain failures carry a stable machine-readable code; the CLI maps them
// to exit code 1 with an error JSON on stderr.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw DomainError(code, what);
}

}  // namespace goodsemi
