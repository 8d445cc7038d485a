#ifndef OMINUS_ERRORS_HPP
#define OMINUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ominus {

/// A request outside an operation's mathematical domain (bad parameters,
/// invalid double-coset spec, violated hypothesis, ...).
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its hard size budget.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An internal exactness check failed (e.g. a division that must be exact
/// left a remainder). Always indicates a formula or sign error.
class ExactnessError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace ominus

#endif
