#pragma once

#include <stdexcept>
#include <string>

namespace weakmeas {

/* Dimension or shape mismatch between operands. */
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/* Post-selection overlap below the orthogonality floor: the weak value is undefined. */
struct OrthogonalPostSelection : std::domain_error {
    using std::domain_error::domain_error;
};

/* A coupling that must be strictly positive was zero or negative. */
struct ZeroCoupling : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/* Field amplitude at the requested point is below the node floor. */
struct NodePoint : std::domain_error {
    using std::domain_error::domain_error;
};

/* Conditioning on an outcome whose probability is numerically zero. */
struct NeverPostSelected : std::domain_error {
    using std::domain_error::domain_error;
};

/* Operator input violates a structural precondition (not Hermitian, not a
 * projector, incomplete partition, bad bin edges, ...). */
struct InvalidOperator : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace weakmeas
