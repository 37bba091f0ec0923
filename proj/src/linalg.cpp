#include "mg/linalg.hpp"

#include <stdexcept>

namespace mg {

std::optional<std::vector<Rat>> solve_exact(const RatMatrix& a, const std::vector<Rat>& b) {
    const int n = a.rows;
    if (a.cols != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_exact: shape mismatch");
    if (n == 0) return std::vector<Rat>{};

    // Integer augmented matrix: clear denominators row by row.
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n + 1));
    for (int i = 0; i < n; ++i) {
        Int lcm(1);
        for (int j = 0; j < n; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.at(i, j).get_den().get_mpz_t());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), b[i].get_den().get_mpz_t());
        for (int j = 0; j < n; ++j) m[i][j] = Int(a.at(i, j) * lcm);
        m[i][n] = Int(b[i] * lcm);
    }

    // Bareiss: all intermediate entries stay integral; prev pivot divides
    // every 2x2 determinant formed at the next step.
    Int prev(1);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[i][k] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != k) std::swap(m[piv], m[k]);
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j <= n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }

    std::vector<Rat> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Rat s(m[i][n]);
        for (int j = i + 1; j < n; ++j) s -= Rat(m[i][j]) * x[j];
        x[i] = s / Rat(m[i][i]);
    }
    return x;
}

int matrix_rank(RatMatrix a) {
    int rank = 0;
    for (int col = 0; col < a.cols && rank < a.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < a.rows; ++i)
            if (a.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(rank, j));
        for (int i = rank + 1; i < a.rows; ++i) {
            if (a.at(i, col) == 0) continue;
            Rat f = a.at(i, col) / a.at(rank, col);
            for (int j = col; j < a.cols; ++j) a.at(i, j) -= f * a.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

std::optional<RatMatrix> invert_exact(const RatMatrix& a) {
    const int n = a.rows;
    if (a.cols != n) throw std::invalid_argument("invert_exact: square matrix required");
    // Gauss-Jordan on [A | I].
    RatMatrix m(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
        m.at(i, n + i) = 1;
    }
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m.at(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != k)
            for (int j = 0; j < 2 * n; ++j) std::swap(m.at(piv, j), m.at(k, j));
        Rat inv = Rat(1) / m.at(k, k);
        for (int j = 0; j < 2 * n; ++j) m.at(k, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || m.at(i, k) == 0) continue;
            Rat f = m.at(i, k);
            for (int j = 0; j < 2 * n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    RatMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = m.at(i, n + j);
    return out;
}

}  // namespace mg
