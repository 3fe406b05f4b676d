#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mphase {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExponentOutOfRange : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class BisectionBracketFailure : public Error {
public:
    using Error::Error;
};

/// A provable inequality failed on concrete data. The message names the item.
class PropertyViolation : public Error {
public:
    using Error::Error;
};

class HypothesisViolation : public Error {
public:
    using Error::Error;
};

class BoxViolation : public Error {
public:
    BoxViolation(const std::string& msg, double violation)
        : Error(msg), violation(violation) {}
    double violation;
};

class MembershipError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& msg, int iters, double residual)
        : Error(msg), iters(iters), residual(residual) {}
    int iters;
    double residual;
};

class SandwichViolation : public Error {
public:
    SandwichViolation(const std::string& msg, double eps)
        : Error(msg), eps(eps) {}
    double eps;
};

class PrincipleViolation : public Error {
public:
    PrincipleViolation(const std::string& msg, std::size_t cell)
        : Error(msg), cell(cell) {}
    std::size_t cell;
};

class MonotonicityViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace mphase
