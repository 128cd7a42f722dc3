#pragma once

#include <stdexcept>
#include <string>

namespace decoy {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two intensities closer than the configured degeneracy gap.
struct DegenerateIntensities : Error {
    using Error::Error;
};

struct PartitionTooLong : Error {
    using Error::Error;
};

struct EnumerationTooLarge : Error {
    using Error::Error;
};

// Q(mu) < e^{-mu} y0: the non-vacuum detection rate would be negative.
struct NegativeQPlus : Error {
    using Error::Error;
};

// The (L0, a0) search ran past its cap; the data admits no feasible yield vector.
struct CapExceeded : Error {
    using Error::Error;
};

struct Infeasible : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct DegenerateYield : Error {
    using Error::Error;
};

}  // namespace decoy
