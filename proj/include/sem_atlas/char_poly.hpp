#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyhedral_map.hpp"

namespace sem_atlas {

using BigInt = boost::multiprecision::cpp_int;

struct IntPolynomial {
    std::vector<BigInt> coeffs;  // constant term first

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // [c0, c1, ..., cn]
    std::string coefficient_list() const {
        std::string out = "[";
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (i) out += ", ";
            out += coeffs[i].str();
        }
        return out + "]";
    }

    // x^12 - 30x^10 - 24x^9 + ...
    std::string str() const {
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const BigInt& c = coeffs[k];
            if (c == 0) continue;
            BigInt mag = c < 0 ? BigInt(-c) : c;
            if (out.empty())
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            if (mag != 1 || k == 0) out += mag.str();
            if (k >= 1) out += "x";
            if (k >= 2) out += "^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs == b.coeffs; }
};

// det(xI - M) by Berkowitz's division-free recurrence.
inline IntPolynomial char_poly(const std::vector<std::vector<BigInt>>& M) {
    const std::size_t n = M.size();
    if (n == 0) return IntPolynomial{{1}};
    // vect: coefficients highest degree first
    std::vector<BigInt> vect{1, -M[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        // R = M[r][0..r-1], C = M[0..r-1][r], A = leading r x r block
        std::vector<BigInt> col(r);
        for (std::size_t i = 0; i < r; ++i) col[i] = M[i][r];
        std::vector<BigInt> t(r + 2);
        t[0] = 1;
        t[1] = -M[r][r];
        std::vector<BigInt> cur = col;  // A^k C
        for (std::size_t k = 0; k < r; ++k) {
            BigInt dot = 0;
            for (std::size_t j = 0; j < r; ++j) dot += M[r][j] * cur[j];
            t[k + 2] = -dot;
            if (k + 1 < r) {
                std::vector<BigInt> nxt(r, 0);
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j)
                        if (M[i][j] != 0) nxt[i] += M[i][j] * cur[j];
                cur.swap(nxt);
            }
        }
        // new = T * vect, T lower-triangular Toeplitz (r+2) x (r+1)
        std::vector<BigInt> nv(r + 2, 0);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < vect.size(); ++j) nv[i] += t[i - j] * vect[j];
        vect.swap(nv);
    }
    IntPolynomial p;
    p.coeffs.assign(vect.rbegin(), vect.rend());
    return p;
}

inline IntPolynomial graph_char_poly(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n, 0));
    for (auto [u, v] : edges) {
        A[u][v] = 1;
        A[v][u] = 1;
    }
    return char_poly(A);
}

// Characteristic polynomial of the adjacency matrix of the 1-skeleton.
inline IntPolynomial edge_graph_char_poly(const PolyhedralMap& m) {
    return graph_char_poly(m.n_vertices(), m.edges());
}

}  // namespace sem_atlas
