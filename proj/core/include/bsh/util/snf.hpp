#pragma once

#include <cstdint>
#include <vector>

namespace bsh {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Nonzero invariant factors d1 | d2 | ... of a rectangular integer
// matrix (row-major), all positive.
std::vector<std::int64_t> smith_invariants(IntMatrix m);

int integer_rank(const IntMatrix& m);

// u * a * v = d with u, v unimodular and d diagonal (invariant factors
// first, in divisibility order). v_inv is the inverse of v.
struct SmithForm {
    IntMatrix d, u, v, v_inv;
    int rank = 0;
};
SmithForm smith_form(const IntMatrix& a);

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

}  // namespace bsh
