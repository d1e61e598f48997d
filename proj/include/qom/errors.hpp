#pragma once

#include <stdexcept>
#include <string>

namespace qom {

// Inputs outside an operation's domain (bad dimensions, unrepresentable
// truncations, parameters off the supported range). CLI maps this to exit 2.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iteration ran out of budget before reaching its tolerance. Carries the
// last residual so callers can report how far the run got. CLI exit 3.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double last_residual)
        : std::runtime_error(msg), residual(last_residual) {}
    double residual;
};

// A violated internal invariant; indicates a bug, not bad input. CLI exit 4.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw domain_error(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw internal_error(msg);
}

}  // namespace qom
