#ifndef CRNF_LINSOLVE_HPP
#define CRNF_LINSOLVE_HPP

#include <vector>

#include "crnf/rational.hpp"

namespace crnf {

using Matrix = std::vector<std::vector<GaussianRational>>;
using Vector = std::vector<GaussianRational>;

enum class SolveStatus { unique, inconsistent, underdetermined };

struct LinearSolveResult {
    SolveStatus status;
    Vector x;  // valid when status == unique
};

/// Exact Gaussian elimination for A x = b; A may be rectangular.
LinearSolveResult solve_linear(Matrix a, Vector b);

/// Inverse of a square matrix; throws validation_error when singular.
Matrix invert_matrix(Matrix a);

}  // namespace crnf

#endif
