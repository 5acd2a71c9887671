#ifndef COLOMBEAU_ERRORS_HPP
#define COLOMBEAU_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace colombeau {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid construction parameters (grids, boxes, scenarios)
struct ConfigError : Error {
    using Error::Error;
};

// an epsilon that is not a grid value
struct LookupError : Error {
    using Error::Error;
};

// a request beyond what a handle supports (derivative order, dimension)
struct CapabilityError : Error {
    using Error::Error;
};

// a declared invariant failed at runtime (e.g. generalized point bound)
struct InvariantViolation : Error {
    using Error::Error;
};

// too few tail points for a regression verdict
struct InsufficientDataError : Error {
    using Error::Error;
};

// a trajectory escaped the safety box
struct BlowUpError : Error {
    BlowUpError(const std::string& msg, double eps, double t)
        : Error(msg), eps(eps), t(t) {}
    double eps;
    double t;
};

// distinguished-representative construction could not be certified
struct ConstructionError : Error {
    using Error::Error;
};

// scenario / expression syntax error
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg), position(position) {}
    std::size_t position = 0;
};

} // namespace colombeau

#endif
