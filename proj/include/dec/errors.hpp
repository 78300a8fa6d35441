#pragma once

#include <stdexcept>
#include <string>

namespace dec {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class degree_mismatch : public error {
public:
    using error::error;
};

class shape_mismatch : public error {
public:
    using error::error;
};

/// A Hodge star on a plane window would move a nonzero component past the ghost ring.
class star_undefined_on_window_boundary : public error {
public:
    using error::error;
};

class ordering_shape_mismatch : public error {
public:
    using error::error;
};

class dimension_mismatch : public error {
public:
    using error::error;
};

class solver_failure : public error {
public:
    using error::error;
};

/// Right-hand side of the Dirac equation has a harmonic component.
class not_in_range : public error {
public:
    using error::error;
};

class not_closed : public error {
public:
    using error::error;
};

}  // namespace dec
