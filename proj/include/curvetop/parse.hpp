#ifndef CURVETOP_PARSE_HPP
#define CURVETOP_PARSE_HPP

#include "curvetop/multipoly.hpp"

#include <stdexcept>
#include <string>

namespace curvetop {

struct ParseError : std::runtime_error {
    std::size_t position; // 0-based offset into the input
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// Parse "3*x^2*y - 1/2*z + 4" style polynomial expressions over x, y, z.
/// Grammar: +, -, *, ^ (non-negative integer exponents), parentheses, and
/// integer or a/b rational literals. Products must be written explicitly.
MultiPoly parse_poly(const std::string& text);

} // namespace curvetop

#endif
