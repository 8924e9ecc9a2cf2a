#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treekernel {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed tree text; offset() is the byte position of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class UnknownSymbolError : public Error {
public:
    using Error::Error;
};

class UnknownStateError : public Error {
public:
    using Error::Error;
};

class ModeMismatchError : public Error {
public:
    using Error::Error;
};

class AlphabetMismatchError : public Error {
public:
    using Error::Error;
};

class DuplicateTreeError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class BudgetExceededError : public Error {
public:
    using Error::Error;
};

class ExhaustedRetriesError : public Error {
public:
    using Error::Error;
};

class AlgorithmUnsupportedError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace treekernel
