#pragma once

#include <stdexcept>
#include <string>

namespace latticerect {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input-layer errors (exit code 2 in the CLI).
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

struct ValidationError : Error {
    using Error::Error;
};

// Algebraic failure modes named by the operation contracts.
struct HintInsufficient : Error {
    using Error::Error;
};
struct NoRegularElement : Error {
    using Error::Error;
};
struct NotIrreducible : Error {
    using Error::Error;
};
struct NotContained : Error {
    using Error::Error;
};
struct NotCyclic : Error {
    using Error::Error;
};
struct NotG0Stable : Error {
    using Error::Error;
};
struct NotABox : Error {
    using Error::Error;
};
struct NonTermination : Error {
    using Error::Error;
};
struct OutOfBox : Error {
    using Error::Error;
};
struct NegativeExponent : Error {
    using Error::Error;
};
struct PFourNotDeclared : Error {
    using Error::Error;
};

}  // namespace latticerect
