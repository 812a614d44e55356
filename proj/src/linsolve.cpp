#include "crnf/linsolve.hpp"

namespace crnf {

LinearSolveResult solve_linear(Matrix a, Vector b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    if (b.size() != rows) throw validation_error("solve_linear: dimension mismatch");

    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        GaussianRational inv = GaussianRational(1) / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            GaussianRational f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return {SolveStatus::inconsistent, {}};
    if (pivot_col.size() < cols) return {SolveStatus::underdetermined, {}};

    Vector x(cols);
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return {SolveStatus::unique, std::move(x)};
}

Matrix invert_matrix(Matrix a) {
    size_t n = a.size();
    Matrix inv(n, Vector(n));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw validation_error("invert_matrix: not square");
        inv[i][i] = GaussianRational(1);
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw validation_error("invert_matrix: singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        GaussianRational f = GaussianRational(1) / a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            GaussianRational g = a[i][c];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= g * a[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace crnf
