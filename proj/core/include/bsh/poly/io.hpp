#pragma once

#include <stdexcept>
#include <string>

#include "bsh/poly/polyhedron.hpp"

namespace bsh::poly {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
};

// SPOLY 1 text. Parsing checks syntax and index ranges only; run
// validate() for the polyhedron invariants.
SimplePolyhedron parse_spoly(const std::string& text);
std::string serialize_spoly(const SimplePolyhedron& p);

std::string format_half(int twice);

}  // namespace bsh::poly
