#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace xtalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class ArithmeticError : public Error {
   public:
    using Error::Error;
};

class DimensionError : public Error {
   public:
    using Error::Error;
};

class UnknownLabelError : public Error {
   public:
    explicit UnknownLabelError(const std::string &label) : Error("unknown label '" + label + "'"), label(label) {}
    std::string label;
};

class SingularMatrixError : public Error {
   public:
    using Error::Error;
};

/// A group of nodes with no capacitive path to ground; the Maxwell matrix is singular.
class FloatingSubcircuitError : public SingularMatrixError {
   public:
    explicit FloatingSubcircuitError(std::vector<std::string> nodes);
    std::vector<std::string> nodes;
};

/// Syntax or validation failure while reading a netlist document. Line and column are 1-based.
class ParseError : public Error {
   public:
    ParseError(const std::string &message, size_t line, size_t column);
    std::string message;
    size_t line;
    size_t column;
};

/// A netlist violating a structural invariant (self-capacitor, shared junction node, ...).
class NetlistError : public Error {
   public:
    using Error::Error;
};

class ZeroTargetWeightError : public Error {
   public:
    using Error::Error;
};

class TopologyMismatchError : public Error {
   public:
    using Error::Error;
};

}  // namespace xtalk
