#ifndef RIESZGAS_ERRORS_HPP
#define RIESZGAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rieszgas {

/// Bad arguments or contract violations at a call site.
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Evaluation at the diagonal of a singular kernel, or a gradient at a
/// point where none is defined.
struct singularity_error : std::domain_error {
    explicit singularity_error(const std::string& msg) : std::domain_error(msg) {}
};

/// A model/field combination outside the supported theory (e.g. the radial
/// Coulomb solver applied to a field violating its hypotheses).
struct unsupported_model_error : std::runtime_error {
    explicit unsupported_model_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime numerical failure (divergent step, failed initialization, ...).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent experiment configuration.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rieszgas

#endif
