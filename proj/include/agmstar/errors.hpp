#ifndef AGMSTAR_ERRORS_HPP
#define AGMSTAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace agmstar {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operand was zero, negative, NaN or infinite where a positive finite
/// real is required.
class non_positive_input : public error {
public:
    using error::error;
};

/// The requested value needs a dynamic range (nome, series argument or
/// binary64 magnitude) this build does not support.
class domain_overflow : public error {
public:
    using error::error;
};

/// An iteration cap or term budget ran out before the convergence
/// criterion was met.
class max_iterations_exceeded : public error {
public:
    using error::error;
};

/// A root bracket that is valid by construction failed to straddle the
/// root. Indicates a logic bug, not bad input.
class bracket_failure : public error {
public:
    using error::error;
};

/// Adaptive quadrature exhausted its refinement budget.
class quadrature_not_converged : public error {
public:
    using error::error;
};

/// Operands violate the hypergeometric backend's 0 < y <= x < 1 domain.
class hypergeom_domain : public error {
public:
    using error::error;
};

} // namespace agmstar

#endif
