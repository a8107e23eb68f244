#pragma once

#include <stdexcept>
#include <string>

namespace osl {

// Bad arguments: empty inputs, non-finite coordinates, out-of-range parameters.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// No dendrogram level satisfies the single-linkage cluster count rule.
class NoValidRadius : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Rejection sampling could not place a point outside the group supports.
class DegenerateModel : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Mixture weights / outlier proportion violate the size-balance condition.
class InfeasibleModel : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace osl
