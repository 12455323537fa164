#pragma once

#include <stdexcept>
#include <string>

namespace twistvals {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowError : Error {
    OverflowError() : Error("checked 128-bit arithmetic overflow") {}
    explicit OverflowError(const std::string& what) : Error(what) {}
};

struct FactorTooLarge : Error {
    explicit FactorTooLarge(const std::string& what = "norm exceeds factorable range")
        : Error(what) {}
};

struct EvenPrime : Error {
    explicit EvenPrime(const std::string& what = "residue symbol undefined at even prime")
        : Error(what) {}
};

struct BoxTooLarge : Error {
    explicit BoxTooLarge(const std::string& what = "brute-force enumeration box too large")
        : Error(what) {}
};

struct BasisError : Error {
    explicit BasisError(const std::string& what) : Error(what) {}
};

struct NotFullRank : Error {
    explicit NotFullRank(const std::string& what = "module generators are not full rank")
        : Error(what) {}
};

struct NotASquare : Error {
    explicit NotASquare(const std::string& what) : Error(what) {}
};

struct UnsupportedUnitStructure : Error {
    explicit UnsupportedUnitStructure(const std::string& what) : Error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what = "division by zero") : Error(what) {}
};

struct EmptyDenominator : Error {
    explicit EmptyDenominator(const std::string& what = "no records in ratio denominator")
        : Error(what) {}
};

struct HashMismatch : Error {
    explicit HashMismatch(const std::string& what) : Error(what) {}
};

struct CheckpointCorrupt : Error {
    explicit CheckpointCorrupt(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace twistvals
