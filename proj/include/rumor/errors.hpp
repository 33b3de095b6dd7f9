#pragma once

#include <stdexcept>
#include <string>

namespace rumor {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A degree sequence whose stub total is odd admits no perfect matching.
struct OddStubSumError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of a formula.
struct DomainError : Error {
    using Error::Error;
};

// No gamma > 0 satisfies the protocol-constant constraints.
struct InfeasibleConstantsError : Error {
    using Error::Error;
};

// Rounded degree counts cannot be normalized to exactly n vertices.
struct InfeasibleNormalizationError : Error {
    using Error::Error;
};

// Stub passed to match_uniform is already matched.
struct AlreadyMatchedError : Error {
    using Error::Error;
};

// Fewer than two unmatched stubs remain.
struct ExhaustedError : Error {
    using Error::Error;
};

// Rejection sampling gave up before drawing a simple graph.
struct TriesExhaustedError : Error {
    using Error::Error;
};

// Phase 1 of the delayed push process missed its newborn threshold.
struct PhaseFailedError : Error {
    using Error::Error;
};

// A simulation exceeded its configured round cap.
struct RoundCapExceededError : Error {
    using Error::Error;
};

// Too few distinct abscissae for a least-squares fit.
struct DegenerateFitError : Error {
    using Error::Error;
};

// Invalid experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace rumor
