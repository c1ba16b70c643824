#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adaptopt {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (XML, CSV) with a 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")")
        , line_(line)
        , column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Well-formed XML that does not follow the workflow schema.
class SchemaError : public ParseError {
public:
    using ParseError::ParseError;
};

// A structural invariant is violated; ids() names the offending elements.
class ValidationError : public Error {
public:
    ValidationError(const std::string& message, std::vector<std::string> ids)
        : Error(message)
        , ids_(std::move(ids))
    {
    }

    const std::vector<std::string>& ids() const noexcept { return ids_; }

private:
    std::vector<std::string> ids_;
};

class LookupError : public Error {
public:
    using Error::Error;
};

class TypeError : public Error {
public:
    using Error::Error;
};

class EncodingError : public Error {
public:
    using Error::Error;
};

class AssemblyError : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

// Caller broke a documented precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Raised by fitness calculators when a required property is absent or mistyped.
class MissingPropertyError : public Error {
public:
    MissingPropertyError(std::string element_id, std::string key)
        : Error("missing or mistyped property '" + key + "' on element '" + element_id + "'")
        , element_id_(std::move(element_id))
        , key_(std::move(key))
    {
    }

    const std::string& element_id() const noexcept { return element_id_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::string element_id_;
    std::string key_;
};

} // namespace adaptopt
