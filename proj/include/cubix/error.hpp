#pragma once

#include <stdexcept>
#include <string>

namespace cubix {

/// Error categories; numeric values double as CLI exit codes.
enum class errc : int {
    parse = 2,
    semantic = 3,
    guard = 4,
    io = 5,
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }
[[noreturn]] inline void fail_parse(const std::string& m) { fail(errc::parse, m); }
[[noreturn]] inline void fail_semantic(const std::string& m) { fail(errc::semantic, m); }
[[noreturn]] inline void fail_guard(const std::string& m) { fail(errc::guard, m); }
[[noreturn]] inline void fail_io(const std::string& m) { fail(errc::io, m); }

inline void require_semantic(bool ok, const std::string& m) {
    if (!ok) fail_semantic(m);
}

} // namespace cubix
