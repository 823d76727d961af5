#include "bsh/util/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace bsh {

namespace {

std::int64_t checked_mul_sub(std::int64_t a, std::int64_t q, std::int64_t b) {
    std::int64_t p = 0;
    std::int64_t r = 0;
    if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &r))
        throw std::overflow_error("smith normal form: entry overflow");
    return r;
}

}  // namespace

std::vector<std::int64_t> smith_invariants(IntMatrix m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    std::vector<std::int64_t> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: least nonzero absolute value in the trailing block
        size_t pr = rows, pc = cols;
        std::int64_t best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                const std::int64_t q = m[i][t] / m[t][t];
                for (size_t j = t; j < cols; ++j) m[i][j] = checked_mul_sub(m[i][j], q, m[t][j]);
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                const std::int64_t q = m[t][j] / m[t][t];
                for (size_t i = t; i < rows; ++i) m[i][j] = checked_mul_sub(m[i][j], q, m[i][t]);
                if (m[t][j] != 0) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // pivot must divide the rest of the block
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (size_t k = t; k < cols; ++k)
                                if (__builtin_add_overflow(m[t][k], m[i][k], &m[t][k]))
                                    throw std::overflow_error("smith normal form: entry overflow");
                            clean = false;
                            break;
                        }
            }
        }
        diag.push_back(std::llabs(m[t][t]));
        ++t;
    }
    return diag;
}

int integer_rank(const IntMatrix& m) { return static_cast<int>(smith_invariants(m).size()); }

namespace {

IntMatrix identity(size_t n) {
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::int64_t add_mul(std::int64_t a, std::int64_t q, std::int64_t b) { return checked_mul_sub(a, -q, b); }

}  // namespace

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    const size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IntMatrix c(n, std::vector<std::int64_t>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (size_t j = 0; j < m; ++j) c[i][j] = add_mul(c[i][j], a[i][l], b[l][j]);
    return c;
}

SmithForm smith_form(const IntMatrix& a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    SmithForm s{a, identity(rows), identity(cols), identity(cols), 0};
    IntMatrix& m = s.d;
    // row i += q * row j, tracked in u
    auto row_add = [&](size_t i, size_t j, std::int64_t q) {
        for (size_t k = 0; k < cols; ++k) m[i][k] = add_mul(m[i][k], q, m[j][k]);
        for (size_t k = 0; k < rows; ++k) s.u[i][k] = add_mul(s.u[i][k], q, s.u[j][k]);
    };
    auto row_swap = [&](size_t i, size_t j) {
        std::swap(m[i], m[j]);
        std::swap(s.u[i], s.u[j]);
    };
    // col i += q * col j: v gets the same, v_inv row j -= q * row i
    auto col_add = [&](size_t i, size_t j, std::int64_t q) {
        for (size_t k = 0; k < rows; ++k) m[k][i] = add_mul(m[k][i], q, m[k][j]);
        for (size_t k = 0; k < cols; ++k) s.v[k][i] = add_mul(s.v[k][i], q, s.v[k][j]);
        for (size_t k = 0; k < cols; ++k) s.v_inv[j][k] = add_mul(s.v_inv[j][k], -q, s.v_inv[i][k]);
    };
    auto col_swap = [&](size_t i, size_t j) {
        for (auto& r : m) std::swap(r[i], r[j]);
        for (auto& r : s.v) std::swap(r[i], r[j]);
        std::swap(s.v_inv[i], s.v_inv[j]);
    };
    size_t t = 0;
    while (t < rows && t < cols) {
        size_t pr = rows, pc = cols;
        std::int64_t best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        row_swap(t, pr);
        col_swap(t, pc);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                row_add(i, t, -(m[i][t] / m[t][t]));
                if (m[i][t] != 0) {
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                col_add(j, t, -(m[t][j] / m[t][t]));
                if (m[t][j] != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
            if (clean)
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            row_add(t, i, 1);
                            clean = false;
                            break;
                        }
        }
        if (m[t][t] < 0) {
            for (auto& x : m[t]) x = -x;
            for (auto& x : s.u[t]) x = -x;
        }
        ++t;
    }
    s.rank = static_cast<int>(t);
    return s;
}

}  // namespace bsh
