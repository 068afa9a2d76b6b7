#pragma once

#include <stdexcept>
#include <string>

namespace wpo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& msg)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    enum class Kind { NotFound, Timeout, Crashed, Unknown, BadOutput };
    SolverError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace wpo
