#ifndef PRIO_COMMON_HPP
#define PRIO_COMMON_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace prio {

inline constexpr double inf = std::numeric_limits<double>::infinity();

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document.
class parse_error : public error {
public:
    using error::error;
};

/// Well-formed input that breaks an instance invariant.
class validation_error : public error {
public:
    using error::error;
};

class io_error : public error {
public:
    using error::error;
};

/// Input outside the supported size or constraint envelope of an operation.
class unsupported_error : public error {
public:
    using error::error;
};

enum class solve_status { feasible, infeasible, undetermined };

inline const char* to_string(solve_status s) {
    switch (s) {
    case solve_status::feasible: return "feasible";
    case solve_status::infeasible: return "infeasible";
    case solve_status::undetermined: return "undetermined";
    }
    return "?";
}

}  // namespace prio

#endif
