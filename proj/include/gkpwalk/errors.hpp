#pragma once

#include <stdexcept>
#include <string>

namespace gkpwalk {

// Error categories surfaced by the library. The CLI maps these onto exit
// codes (validation = 2, io = 3, schema = 4).

struct invalid_parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two superpositions with different vacuum widths cannot be combined.
struct incompatible_width_error : invalid_parameter_error {
    using invalid_parameter_error::invalid_parameter_error;
};

// Rotation (and the lens built on it) is only closed on the Gaussian family
// for the symmetric vacuum sigma^2 = 1/2.
struct asymmetric_vacuum_error : invalid_parameter_error {
    using invalid_parameter_error::invalid_parameter_error;
};

struct zero_norm_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_coin_error : invalid_parameter_error {
    using invalid_parameter_error::invalid_parameter_error;
};

struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed state/trace documents (wrong fields, bad numbers).
struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gkpwalk
