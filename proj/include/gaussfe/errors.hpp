// errors.hpp — exception taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace gaussfe {

// Input outside an operation's documented domain (division by zero, x not in
// [0,1), pole hit, undeclared endpoint value, ...). CLI maps this to exit 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A float input ran out of reliable bits (expansion residual below 2^(-P/2)).
struct precision_exhausted : std::runtime_error {
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// Asked for structure deeper than the input's depth.
struct depth_error : domain_error {
    explicit depth_error(const std::string& what) : domain_error(what) {}
};

// A question that is not numerically decidable for the given kind.
struct undecidable_error : domain_error {
    explicit undecidable_error(const std::string& what) : domain_error(what) {}
};

// Quadrature or sieve could not reach the requested tolerance within its cap.
struct tolerance_error : std::runtime_error {
    explicit tolerance_error(const std::string& what) : std::runtime_error(what) {}
};

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input expression or flags. CLI maps this to exit 64.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaussfe
