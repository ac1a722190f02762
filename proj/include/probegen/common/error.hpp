#pragma once

#include <stdexcept>
#include <string>

namespace probegen {

// Base for every error the toolkit raises deliberately.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration or data files (patterns, rule lists, config JSON).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed record in a line-delimited input file.
class SchemaError : public Error {
public:
    SchemaError(const std::string& file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A remote or fixture client failed to answer.
class ClientError : public Error {
public:
    using Error::Error;
};

// The provider refused further requests; callers checkpoint and pause.
class QuotaExhausted : public ClientError {
public:
    using ClientError::ClientError;
};

}  // namespace probegen
