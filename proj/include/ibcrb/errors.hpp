#ifndef IBCRB_ERRORS_HPP
#define IBCRB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ibcrb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimMismatch : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

struct BasePointMismatch : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct InvalidDegreesOfFreedom : Error {
    using Error::Error;
};

struct NonOrthonormalBasis : Error {
    using Error::Error;
};

struct EmptySampleSet : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace ibcrb

#endif
