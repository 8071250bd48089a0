#pragma once

#include <stdexcept>
#include <string>

namespace hs {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A constructor or operation precondition on a plain parameter failed.
class invalid_parameter : public error {
public:
    using error::error;
};

/// Two operands live on different grids.
class grid_mismatch : public error {
public:
    using error::error;
};

/// A sampling grid cannot resolve the requested frequency band or
/// carries too few samples for the requested derivative order.
class resolution_error : public error {
public:
    using error::error;
};

/// Derivative order outside the supported range of an operation.
class unsupported_order : public error {
public:
    using error::error;
};

/// Two atoms at the same (location, order) where distinct ones are required.
class duplicate_atom : public error {
public:
    using error::error;
};

/// An atom kind (e.g. derivative order) the operation cannot handle.
class unsupported_atom : public error {
public:
    using error::error;
};

/// Input located outside the operation's admissible region.
class unsupported_input : public error {
public:
    using error::error;
};

/// A point argument outside its admissible open interval.
class domain_error : public error {
public:
    using error::error;
};

/// An input that must be nonzero / nondegenerate is degenerate.
class degenerate_input : public error {
public:
    using error::error;
};

/// Halo too small for the requested tail accuracy.
class tail_precision_error : public error {
public:
    using error::error;
};

/// Translation distance does not clear the support of the test function.
class overlap_error : public error {
public:
    using error::error;
};

} // namespace hs
