#pragma once

#include <stdexcept>
#include <string>

namespace ca2d {

// Malformed input text (rule files, configuration dumps, CLI values).
// Maps to exit code 2 in the CLI.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Structurally valid input that violates an operation's preconditions
// (rank on a non-linear rule, exhausted valid region, ...). Exit code 3.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ca2d
