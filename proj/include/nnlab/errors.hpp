#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nnlab {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Index or window outside the data actually available.
struct OutOfRangeError : Error {
    using Error::Error;
};

// Structural misuse of an operation (k > n, level above r_max, ...).
struct InvalidOrderError : Error {
    using Error::Error;
};

struct InvalidDigitError : Error {
    using Error::Error;
};

// Candidate vector does not sum to one.
struct NotProbabilityError : Error {
    using Error::Error;
};

// Candidate vector violates the marginal equations; carries the witness.
struct NotShiftInvariantError : Error {
    explicit NotShiftInvariantError(const std::string& what, std::string violating)
        : Error(what), violating_block(std::move(violating)) {}
    std::string violating_block;
};

struct InvalidComparisonError : Error {
    using Error::Error;
};

struct ConstructionError : Error {
    using Error::Error;
};

// Exact-mode ladder refused to grow past its configured cap.
struct ExactCapError : Error {
    using Error::Error;
};

// Orbit hit a partition boundary: the point has no unique expansion.
struct NotInUInfinityError : Error {
    NotInUInfinityError(const std::string& what, std::size_t index)
        : Error(what), digit_index(index) {}
    std::size_t digit_index;  // 1-based index of the digit that could not be produced
};

// Input carried too little precision to certify the next digit.
struct PrecisionError : Error {
    PrecisionError(const std::string& what, std::size_t index)
        : Error(what), digit_index(index) {}
    std::size_t digit_index;
};

struct TowerOverflowError : Error {
    TowerOverflowError(const std::string& what, unsigned depth)
        : Error(what), depth(depth) {}
    unsigned depth;  // depth at which the bit cap tripped
};

struct UsageError : Error {
    using Error::Error;
};

}  // namespace nnlab
