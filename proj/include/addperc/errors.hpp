#pragma once

#include <stdexcept>
#include <string>

namespace addperc {

// Input relation is not antisymmetric after transitive closure.
struct CycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration guard was exceeded.  Guards keep brute-force operations
// bounded; the defaults live next to the operations that use them.
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotALattice : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotDistributive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAdditiveError : std::runtime_error {
    std::string family;        // empty when raised outside a model context
    std::string witness;       // rendered pair of inputs violating additivity
    NotAdditiveError(std::string fam, std::string wit)
        : std::runtime_error(fam.empty()
              ? "map is not additive, witness " + wit
              : "map '" + fam + "' is not additive, witness " + wit),
          family(std::move(fam)),
          witness(std::move(wit)) {}
};

// Flow evaluated outside the timeline window, or with s > t.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Positioned errors from the model-description parser.  line/col are 1-based.
struct PositionedError : std::runtime_error {
    int line;
    int col;
    PositionedError(const std::string& what, int line_, int col_)
        : std::runtime_error(what + " at line " + std::to_string(line_) +
                             ", col " + std::to_string(col_)),
          line(line_),
          col(col_) {}
};

struct SyntaxError : PositionedError {
    using PositionedError::PositionedError;
};

struct UnknownState : PositionedError {
    using PositionedError::PositionedError;
};

struct BadOffset : PositionedError {
    using PositionedError::PositionedError;
};

struct NotAPartialOrder : PositionedError {
    using PositionedError::PositionedError;
};

}  // namespace addperc
