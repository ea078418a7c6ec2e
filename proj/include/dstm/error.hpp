#pragma once

#include <stdexcept>
#include <string>

namespace dstm {

// Base class for everything this library throws on contract violations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operand shapes do not conform (non-square input, product mismatch, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

// Wrong number of symbols handed to a code builder.
class ArityError : public Error {
public:
    using Error::Error;
};

// A builder violated the linearity assumed by dispersion extraction.
class StructuralError : public Error {
public:
    using Error::Error;
};

// A constellation fails the unitarity/power/bit-mapping requirements.
class ConstellationError : public Error {
public:
    using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

// Unsupported or inconsistent configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace dstm
