#pragma once

#include <stdexcept>
#include <string>

namespace jcm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative photon
/// index, custom table lookup past its end, inconsistent parameters).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The truncated Fock space cannot hold the requested state.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int suggested_n_max)
        : Error(what), suggested_n_max_(suggested_n_max) {}

    int suggested_n_max() const noexcept { return suggested_n_max_; }

private:
    int suggested_n_max_;
};

/// A numerical guard tripped (integrator drift, complex concurrence spectrum).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Configuration file problem; carries the offending line (0 if unknown) and key.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0, std::string field = {})
        : Error(format(what, line, field)), line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& what, int line, const std::string& field) {
        std::string msg;
        if (line > 0) msg += "line " + std::to_string(line) + ": ";
        if (!field.empty()) msg += "'" + field + "': ";
        return msg + what;
    }

    int line_;
    std::string field_;
};

}  // namespace jcm
