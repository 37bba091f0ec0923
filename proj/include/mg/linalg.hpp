#pragma once

#include <optional>
#include <vector>

#include "mg/rational.hpp"

namespace mg {

// Dense rational matrix in row-major order.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> data;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, Rat(0)) {}
    Rat& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    const Rat& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
};

// Solves A x = b exactly by fraction-free (Bareiss) Gaussian elimination
// after clearing denominators. Returns nullopt when A is singular.
std::optional<std::vector<Rat>> solve_exact(const RatMatrix& a, const std::vector<Rat>& b);

// Rank over the rationals, by Gaussian elimination.
int matrix_rank(RatMatrix a);

// Exact inverse; nullopt when singular.
std::optional<RatMatrix> invert_exact(const RatMatrix& a);

}  // namespace mg
