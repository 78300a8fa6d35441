#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// library's operator code; only its plain data types are shared.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dec/matrix.hpp"

namespace oracle {

inline int wrap(int i, int n) { return ((i - 1) % n + n) % n + 1; }

/// Canonical index of a vertex or face: s-major, k fastest, 0-based.
inline std::size_t cell_index(int k, int s, int n, int m) {
    return static_cast<std::size_t>(wrap(s, m) - 1) * n + (wrap(k, n) - 1);
}

/// d on 0-forms of the n x m torus written straight from the difference stencil.
inline dec::IntMatrix stencil_d0(int n, int m) {
    const std::size_t nm = static_cast<std::size_t>(n) * m;
    dec::IntMatrix a(2 * nm, nm);
    for (int s = 1; s <= m; ++s)
        for (int k = 1; k <= n; ++k) {
            const std::size_t row = cell_index(k, s, n, m);
            a(row, cell_index(k + 1, s, n, m)) += 1;
            a(row, cell_index(k, s, n, m)) -= 1;
            a(nm + row, cell_index(k, s + 1, n, m)) += 1;
            a(nm + row, cell_index(k, s, n, m)) -= 1;
        }
    return a;
}

/// d on 1-forms: psi(k,s) = v(k+1,s) - v(k,s) - u(k,s+1) + u(k,s).
inline dec::IntMatrix stencil_d1(int n, int m) {
    const std::size_t nm = static_cast<std::size_t>(n) * m;
    dec::IntMatrix b(nm, 2 * nm);
    for (int s = 1; s <= m; ++s)
        for (int k = 1; k <= n; ++k) {
            const std::size_t row = cell_index(k, s, n, m);
            b(row, nm + cell_index(k + 1, s, n, m)) += 1;
            b(row, nm + cell_index(k, s, n, m)) -= 1;
            b(row, cell_index(k, s + 1, n, m)) -= 1;
            b(row, cell_index(k, s, n, m)) += 1;
        }
    return b;
}

/// Rank over Z/p for a large prime p, by plain Gaussian elimination.
inline std::size_t rank_mod_p(const dec::IntMatrix& a, std::int64_t p = 1000000007) {
    std::vector<std::vector<std::int64_t>> m(a.rows(), std::vector<std::int64_t>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = ((a(i, j) % p) + p) % p;
    auto power = [p](std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < a.rows() && m[piv][c] == 0) ++piv;
        if (piv == a.rows()) continue;
        std::swap(m[piv], m[rank]);
        const std::int64_t inv = power(m[rank][c], p - 2);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            const std::int64_t f = m[i][c] * inv % p;
            for (std::size_t j = c; j < a.cols(); ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

/// Determinant by cofactor expansion; only for tiny matrices.
inline double det(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<double>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<double> row;
            for (std::size_t l = 0; l < n; ++l)
                if (l != j) row.push_back(a[i][l]);
            minor.push_back(row);
        }
        total += (j % 2 ? -1.0 : 1.0) * a[0][j] * det(minor);
    }
    return total;
}

inline nlohmann::json load_fixtures() {
    std::ifstream in(std::string(DEC_FIXTURE_DIR) + "/paper2x2.json");
    return nlohmann::json::parse(in);
}

inline dec::IntMatrix fixture_matrix(const std::string& key) {
    const auto j = load_fixtures().at(key);
    dec::IntMatrix out(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t c = 0; c < j[i].size(); ++c) out(i, c) = j[i][c].get<std::int64_t>();
    return out;
}

inline std::vector<std::string> fixture_labels(const std::string& key) {
    return load_fixtures().at("orderings").at(key).get<std::vector<std::string>>();
}

}  // namespace oracle
