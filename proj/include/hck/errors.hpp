#pragma once

#include <stdexcept>
#include <string>

namespace hck {

enum class ParseErrc {
    malformed_header = 1,
    vertex_out_of_range = 2,
    duplicate_edge = 3,
    size_not_in_profile = 4,
    malformed_line = 5,
    unsorted_edge = 6,
    weight_mismatch = 7,
};

const char* to_string(ParseErrc code);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrc code, std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), code_(code), line_(line) {}
    ParseErrc code() const { return code_; }
    std::size_t line() const { return line_; }

private:
    ParseErrc code_;
    std::size_t line_;
};

// A precondition or internal consistency check failed.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Checked int64 arithmetic overflowed.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

inline void require(bool ok, const char* what) {
    if (!ok) throw InvariantError(what);
}

}  // namespace hck
