#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace filtrate {

/// Malformed textual input (words, ring specs, e-map specs, job files).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}
    explicit ParseError(const std::string& message)
        : std::runtime_error(message), position_(npos) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A well-formed request that violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed; the two membership routes disagreed.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace filtrate
