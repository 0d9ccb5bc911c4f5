#pragma once

#include <stdexcept>
#include <string>

namespace leray {

/// Failure categories surfaced by the solver library.  Every error thrown
/// here derives from SolverError so callers (and the CLI) can map categories
/// to exit codes without string matching.
enum class ErrorKind {
    invalid_argument,          ///< parameter outside its documented domain
    invalid_field,             ///< non-finite or structurally inconsistent field
    blow_up,                   ///< non-finite values produced during a sub-iteration
    divergence,                ///< Picard increments grow instead of contracting
    insufficient_nodes,        ///< too few quadrature/trajectory nodes
    not_free_space,            ///< field is not negligible at the box boundary
    insufficient_range,        ///< too few radial shells inside the fit range
    no_contraction,            ///< adaptive step-size search exhausted its halvings
    nonstar_inner_divergence,  ///< inner fixed point of the non-star substep failed
    config,                    ///< malformed configuration file / override
    io,                        ///< checkpoint or report I/O failure
};

class SolverError : public std::runtime_error {
  public:
    SolverError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw SolverError(kind, msg);
}

}  // namespace leray
