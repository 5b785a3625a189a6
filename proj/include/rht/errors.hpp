#pragma once

#include <stdexcept>
#include <string>

namespace rht {

// Input that fails DGA axioms or the simple-connectivity requirement.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction hit the configured resource cap and aborted loudly.
struct BudgetExceededError : std::runtime_error {
    BudgetExceededError(const std::string& what, std::string partial_report)
        : std::runtime_error(what), partial(std::move(partial_report)) {}
    std::string partial;
};

// Malformed presentation documents or literals.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact-sequence instance with no consistent rank assignment.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation invoked outside its stated hypotheses.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rht
