#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace skein {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidLevel : public Error {
public:
    using Error::Error;
};

class LevelMismatch : public Error {
public:
    LevelMismatch(int r1, int r2)
        : Error("level mismatch: r=" + std::to_string(r1) + " vs r=" + std::to_string(r2)) {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class NotIntegral : public Error {
public:
    using Error::Error;
};

// Malformed input text or schema violation. CLI exit code 2.
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally invalid diagram, spine or coloring. CLI exit code 2.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) {
            if (!s.empty()) s += "; ";
            s += x;
        }
        return s;
    }
    std::vector<std::string> issues_;
};

// Evaluation would exceed the configured cut width or state budget. CLI exit code 3.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

// A computed quantity violated a mathematical guarantee. CLI exit code 4.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ScaleMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace skein
