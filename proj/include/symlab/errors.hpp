#pragma once

#include <stdexcept>
#include <string>

namespace symlab {

// Error taxonomy shared across modules. Everything derives from Error so
// callers (notably the CLI) can map failures to exit codes in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter is on the boundary of its open domain (e.g. Bernoulli p in {0,1}).
struct DegenerateParameter : Error {
    using Error::Error;
};

// A distribution mean could not be recovered as an exact rational.
struct NonRepresentableMean : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

// LP input fails its structural invariants (dimension mismatch, non-finite entries).
struct InvalidProgram : Error {
    using Error::Error;
};

// Simplex exceeded its iteration budget; unreachable under Bland's rule unless
// a tolerance is mis-set.
struct CyclingSuspected : Error {
    using Error::Error;
};

struct InvalidProblem : Error {
    using Error::Error;
};

struct OracleTooLarge : Error {
    using Error::Error;
};

// A decoded LP solution failed its own post-check (internal bug signal).
struct SolverInconsistency : Error {
    using Error::Error;
};

// Exit interval must satisfy a < 0 < b.
struct InvalidInterval : Error {
    using Error::Error;
};

// Skorokhod machinery requires a centered input law.
struct NotCentered : Error {
    using Error::Error;
};

} // namespace symlab
