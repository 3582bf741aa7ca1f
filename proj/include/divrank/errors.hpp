#ifndef DIVRANK_ERRORS_HPP
#define DIVRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace divrank {

// Error categories map 1:1 onto process exit codes and C API status values:
// validation -> 1, numeric -> 2, io -> 3.
enum class ErrorKind { validation = 1, numeric = 2, io = 3 };

class EngineError : public std::runtime_error {
public:
    EngineError(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public EngineError {
public:
    explicit ValidationError(const std::string& msg)
        : EngineError(ErrorKind::validation, msg) {}
};

class NumericError : public EngineError {
public:
    explicit NumericError(const std::string& msg)
        : EngineError(ErrorKind::numeric, msg) {}
};

class IoError : public EngineError {
public:
    explicit IoError(const std::string& msg)
        : EngineError(ErrorKind::io, msg) {}
};

} // namespace divrank

#endif
