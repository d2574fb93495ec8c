#pragma once

// Error kinds shared by all modules. Every domain failure carries a kind so
// the CLI can report it structurally (JSON `error.kind`) without string
// matching.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace divgrp {

enum class ErrorKind {
    ParseError,
    BoundExceeded,
    ParentMismatch,
    NoSolution,
    NotTorsionFree,
    NotTorsion,
    InfiniteOrder,
    NotDivisible,
    NotFinitelyGenerated,
    DimensionMismatch,
    UnsupportedMix,
    UnsupportedAtom,
};

const char* to_string(ErrorKind kind);

class GroupError : public std::runtime_error {
public:
    GroupError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Syntax error in the expression language or an element literal.
// `offset` is the 0-based byte offset of the failure; `expected` lists the
// tokens that would have been accepted there.
class ParseError : public GroupError {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

} // namespace divgrp
