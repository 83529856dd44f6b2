#include "ringsum/linalg.hpp"

#include <algorithm>

namespace ringsum {

namespace {

// Reduced row echelon form over the first `cols` columns; pivot rows end up
// first, rows without a pivot keep only entries in columns >= cols (if any).
// Returns the pivot column of each pivot row.
std::vector<size_t> rref(KMat& m, size_t cols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Cyclotomic inv = m[row][col].inverse();
        for (size_t j = col; j < m[row].size(); ++j) m[row][j] = m[row][j] * inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            Cyclotomic f = m[i][col];
            for (size_t j = col; j < m[i].size(); ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::vector<KVec> kernel_basis(KMat m, size_t cols) {
    for (auto& r : m) r.resize(cols);
    std::vector<size_t> pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<KVec> basis;
    for (size_t col = 0; col < cols; ++col) {
        if (is_pivot[col]) continue;
        KVec v(cols);
        v[col] = Cyclotomic(1L);
        for (size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -m[r][col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<KVec> solve_linear(KMat m, KVec rhs) {
    size_t cols = 0;
    for (auto& r : m) cols = std::max(cols, r.size());
    for (size_t i = 0; i < m.size(); ++i) {
        m[i].resize(cols + 1);
        m[i][cols] = i < rhs.size() ? rhs[i] : Cyclotomic();
    }
    std::vector<size_t> pivots = rref(m, cols);
    for (size_t i = pivots.size(); i < m.size(); ++i)
        if (!m[i][cols].is_zero()) return std::nullopt;
    KVec v(cols);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m[r][cols];
    return v;
}

std::vector<KVec> row_reduce(std::vector<KVec> rows) {
    size_t cols = 0;
    for (auto& r : rows) cols = std::max(cols, r.size());
    for (auto& r : rows) r.resize(cols);
    KMat m = rows;
    std::vector<size_t> pivots = rref(m, cols);
    m.resize(pivots.size());
    return m;
}

std::vector<std::vector<Int>> integer_kernel(std::vector<std::vector<Int>> m, size_t cols) {
    for (auto& r : m) r.resize(cols, Int(0));
    // Column-style Hermite reduction: track unimodular U with M U = H; kernel
    // vectors are the columns of U above zero columns of H.
    size_t rows = m.size();
    std::vector<std::vector<Int>> u(cols, std::vector<Int>(cols, Int(0)));
    for (size_t i = 0; i < cols; ++i) u[i][i] = 1;
    auto col_combine = [&](size_t a, size_t b, const Int& p, const Int& q, const Int& r, const Int& s) {
        // (col_a, col_b) <- (p*col_a + q*col_b, r*col_a + s*col_b)
        for (size_t i = 0; i < rows; ++i) {
            Int na = p * m[i][a] + q * m[i][b];
            Int nb = r * m[i][a] + s * m[i][b];
            m[i][a] = na;
            m[i][b] = nb;
        }
        for (size_t i = 0; i < cols; ++i) {
            Int na = p * u[i][a] + q * u[i][b];
            Int nb = r * u[i][a] + s * u[i][b];
            u[i][a] = na;
            u[i][b] = nb;
        }
    };
    size_t lead_col = 0;
    for (size_t row = 0; row < rows && lead_col < cols; ++row) {
        // clear row `row` to a single pivot in column lead_col using gcd steps
        bool any = false;
        for (size_t c = lead_col; c < cols; ++c)
            if (m[row][c] != 0) {
                any = true;
                break;
            }
        if (!any) continue;
        for (size_t c = lead_col + 1; c < cols; ++c) {
            if (m[row][c] == 0) continue;
            if (m[row][lead_col] == 0) {
                col_combine(lead_col, c, Int(0), Int(1), Int(1), Int(0));
                continue;
            }
            Int x, y;
            Int g = ext_gcd(m[row][lead_col], m[row][c], x, y);
            Int a = m[row][lead_col] / g, b = m[row][c] / g;
            // new lead = g, new other = 0; det = x*a + y*b = 1
            col_combine(lead_col, c, x, y, -b, a);
        }
        if (m[row][lead_col] != 0) ++lead_col;
    }
    std::vector<std::vector<Int>> basis;
    for (size_t c = 0; c < cols; ++c) {
        bool zero = true;
        for (size_t i = 0; i < rows; ++i)
            if (m[i][c] != 0) {
                zero = false;
                break;
            }
        if (!zero) continue;
        std::vector<Int> v(cols);
        for (size_t i = 0; i < cols; ++i) v[i] = u[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Int>> integer_kernel_with_congruence(const std::vector<std::vector<Int>>& m,
                                                             size_t cols,
                                                             const std::vector<Int>& cong,
                                                             const Int& modulus) {
    return integer_kernel_with_congruences(m, cols, {{cong, modulus}});
}

std::vector<std::vector<Int>> integer_kernel_with_congruences(
    const std::vector<std::vector<Int>>& m, size_t cols,
    const std::vector<std::pair<std::vector<Int>, Int>>& congs) {
    // Solve M v = 0 and cong_r . v + mod_r * s_r = 0 over Z^(cols+k); project
    // out the slacks (injective on the kernel since every modulus is nonzero).
    size_t k = congs.size();
    std::vector<std::vector<Int>> big = m;
    for (auto& r : big) r.resize(cols + k, Int(0));
    for (size_t r = 0; r < k; ++r) {
        if (congs[r].second == 0) throw Error("integer kernel: zero modulus");
        std::vector<Int> crow(cols + k, Int(0));
        for (size_t i = 0; i < cols && i < congs[r].first.size(); ++i) crow[i] = congs[r].first[i];
        crow[cols + r] = congs[r].second;
        big.push_back(std::move(crow));
    }
    auto full = integer_kernel(std::move(big), cols + k);
    std::vector<std::vector<Int>> out;
    for (auto& v : full) {
        v.resize(cols);
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (!zero) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace ringsum
