#pragma once

#include <stdexcept>
#include <string>

namespace nlcap {

// Quadrature/Monte-Carlo did not reach the requested tolerance.
struct accuracy_error : std::runtime_error {
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

// Young problem outside the regime the interior equation is valid for
// (s1 != s2 together with sigma != 0).
struct unsupported_regime : std::invalid_argument {
    explicit unsupported_regime(const std::string& what) : std::invalid_argument(what) {}
};

// W has the same sign at both endpoints: no interior contact angle.
struct no_interior_solution : std::runtime_error {
    explicit no_interior_solution(const std::string& what) : std::runtime_error(what) {}
};

// Radial multiplier of a profiled kernel has no limit at 0.
struct no_blowup : std::runtime_error {
    explicit no_blowup(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nlcap
