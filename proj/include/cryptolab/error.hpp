#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cryptolab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A character that is not part of the alphabet (strict mode) or of the 8-bit code.
class SymbolError : public Error {
public:
    SymbolError(std::size_t position, char symbol, const std::string& what)
        : Error(what), position_(position), symbol_(symbol) {}

    std::size_t position() const noexcept { return position_; }
    char symbol() const noexcept { return symbol_; }

private:
    std::size_t position_;
    char symbol_;
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t expected, std::size_t actual, const std::string& what)
        : Error(what), expected_(expected), actual_(actual) {}

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

class InvalidKey : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class ProtocolError : public Error {
public:
    using Error::Error;
};

}  // namespace cryptolab
