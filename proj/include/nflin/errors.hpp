#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nflin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad rational, wrong field type, inconsistent lengths.
/// `path` is a JSON-pointer-like location when the error comes from a file.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg, std::string path = {})
        : Error(path.empty() ? msg : path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class NonResonantCoefficient : public Error {
public:
    NonResonantCoefficient(std::vector<int> mu, int alpha, const std::string& msg)
        : Error(msg), mu_(std::move(mu)), alpha_(alpha) {}
    const std::vector<int>& mu() const noexcept { return mu_; }
    int alpha() const noexcept { return alpha_; }

private:
    std::vector<int> mu_;
    int alpha_;
};

class NonPoincareUnbounded : public Error {
public:
    using Error::Error;
};

/// A generated monomial fell outside the kept w-basis while building a parent system.
class NotClosed : public Error {
public:
    NotClosed(std::vector<int> witness, const std::string& msg)
        : Error(msg), witness_(std::move(witness)) {}
    const std::vector<int>& witness() const noexcept { return witness_; }

private:
    std::vector<int> witness_;
};

class StructureViolation : public Error {
public:
    using Error::Error;
};

class NoTriangularOrder : public Error {
public:
    using Error::Error;
};

class NonFinite : public Error {
public:
    NonFinite(double time, const std::string& msg) : Error(msg), time_(time) {}
    /// Time of the first sample that was not finite.
    double time() const noexcept { return time_; }

private:
    double time_;
};

class UnboundSymbol : public Error {
public:
    explicit UnboundSymbol(const std::string& symbol)
        : Error("unbound symbol '" + symbol + "'"), symbol_(symbol) {}
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

} // namespace nflin
