#pragma once

#include <stdexcept>
#include <string>

namespace lbz {

/// Base class for all errors raised by the library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct mixed_fields : error {
    explicit mixed_fields(const std::string& msg = "operands belong to different fields") : error(msg) {}
};

struct division_by_zero : error {
    explicit division_by_zero(const std::string& msg = "division by zero") : error(msg) {}
};

struct dimension_mismatch : error {
    explicit dimension_mismatch(const std::string& msg = "dimension mismatch") : error(msg) {}
};

struct not_an_ideal : error {
    explicit not_an_ideal(const std::string& msg = "subspace is not a two-sided ideal") : error(msg) {}
};

struct not_leibniz : error {
    explicit not_leibniz(const std::string& msg = "table does not satisfy the required Leibniz identity") : error(msg) {}
};

struct requires_finite_field : error {
    explicit requires_finite_field(const std::string& msg = "operation requires a prime field GF(p)") : error(msg) {}
};

struct cap_exceeded : error {
    explicit cap_exceeded(const std::string& msg) : error(msg) {}
};

struct bad_params : error {
    explicit bad_params(const std::string& msg) : error(msg) {}
};

/// Raised when the sum of all nilpotent (solvable) ideals fails to be
/// nilpotent (solvable).  Signals a genuine mathematical surprise; never
/// swallowed.
struct maximality_violated : error {
    explicit maximality_violated(const std::string& msg) : error(msg) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

} // namespace lbz
