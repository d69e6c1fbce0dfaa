// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Protocol error taxonomy. Each code maps to a distinct CLI exit code.

#pragma once

#include <stdexcept>
#include <string>

namespace anoncred {

enum class Err : int {
    // predicate / attribute errors
    MissingAttribute = 10,
    DuplicateAttributeName = 11,
    TooManyAttributes = 12,
    ValueOutOfRange = 13,
    LengthMismatch = 14,
    // presentation errors
    Revoked = 20,
    IssuerNotInSet = 21,
    AttributeNotCovered = 22,
    HidingSetTooLarge = 23,
    RevocationCapacityExceeded = 24,
    // proving-system errors
    CircuitTooLarge = 30,
    UnsatisfiedWitness = 31,
    UnsupportedShape = 32,
    // front-end errors
    ParseError = 40,
    IoError = 41,
    InvalidInput = 42,
    TestBackendRefused = 43,
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }
    int exit_code() const { return (int)code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace anoncred
