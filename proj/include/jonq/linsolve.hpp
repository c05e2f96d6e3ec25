#ifndef JONQ_LINSOLVE_HPP
#define JONQ_LINSOLVE_HPP

#include <optional>
#include <vector>

#include "field.hpp"

namespace jonq {

struct LinearSolution {
    std::optional<std::vector<FieldElem>> particular;
    std::vector<std::vector<FieldElem>> nullspace;
};

// Exact Gaussian elimination for M x = rhs over K; returns one particular
// solution (when consistent) and a basis of the kernel.
inline LinearSolution solve_linear(std::vector<std::vector<FieldElem>> M,
                                   std::vector<FieldElem> rhs) {
    const size_t rows = M.size();
    const size_t cols = rows ? M[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = rows;
        for (size_t i = r; i < rows; ++i)
            if (!M[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        std::swap(M[sel], M[r]);
        std::swap(rhs[sel], rhs[r]);
        FieldElem inv = M[r][c].inverse();
        for (size_t j = c; j < cols; ++j) M[r][j] = M[r][j] * inv;
        rhs[r] = rhs[r] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            FieldElem f = M[i][c];
            for (size_t j = c; j < cols; ++j) M[i][j] = M[i][j] - f * M[r][j];
            rhs[i] = rhs[i] - f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolution out;
    bool consistent = true;
    for (size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) consistent = false;
    if (consistent) {
        std::vector<FieldElem> x(cols, FieldElem(0));
        for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = rhs[i];
        out.particular = std::move(x);
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<FieldElem> v(cols, FieldElem(0));
        v[free_c] = FieldElem(1);
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -M[i][free_c];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

}  // namespace jonq

#endif
