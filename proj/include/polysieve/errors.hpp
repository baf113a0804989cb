#pragma once

#include <stdexcept>
#include <string>

namespace polysieve {

// Input file rejected; line is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A size guard or memory budget was exceeded. The message names the
// cheaper alternative where one exists.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace polysieve
