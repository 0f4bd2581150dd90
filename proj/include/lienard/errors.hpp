#pragma once

#include <stdexcept>
#include <string>

namespace lienard {

// Three failure categories; the CLI maps them to exit codes 1/2/3.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AssumptionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureFailure : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct NonConvergence : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct NewtonDivergence : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct ExtrapolationUnstable : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct CatalogMismatch : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct TargetOutOfRange : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct WindowTooNarrow : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct NotAsymptotic : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct NoBalancedSystemInBracket : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct ChartMismatch : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct AssumptionBrokenByTuning : AssumptionViolation {
    using AssumptionViolation::AssumptionViolation;
};

}  // namespace lienard
