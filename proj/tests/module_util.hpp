#ifndef HSD_MODULE_UTIL_HPP
#define HSD_MODULE_UTIL_HPP

#include <cstdint>
#include <vector>

#include "hsd/derivation.hpp"
#include "hsd/idmodule.hpp"
#include "test_util.hpp"

namespace hsd::testing {

// Square matrices of truncated series, just enough machinery to build
// iterative test modules from A(T) = Y theta(Y)^{-1}.

using SeriesMatrix = std::vector<std::vector<TruncSeries<Ratfun>>>;

inline SeriesMatrix series_matrix(std::size_t n, std::uint32_t order, std::uint64_t p) {
    return SeriesMatrix(n, std::vector<TruncSeries<Ratfun>>(n, TruncSeries<Ratfun>(order, p)));
}

inline SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
    std::size_t n = a.size();
    SeriesMatrix r = series_matrix(n, a[0][0].order(), a[0][0].prime());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

/// Inverse of a series matrix whose constant-term matrix is invertible:
/// write M = Y0 (I - E) with E vanishing at T = 0 and sum the Neumann series.
inline SeriesMatrix mat_inverse(const SeriesMatrix& m) {
    const std::size_t n = m.size();
    const std::uint32_t order = m[0][0].order();
    const std::uint64_t p = m[0][0].prime();

    // Invert the constant-term matrix over F_p(s) by Gaussian elimination.
    std::vector<std::vector<Ratfun>> y0(n, std::vector<Ratfun>(n, Ratfun::zero(p)));
    std::vector<std::vector<Ratfun>> inv0(n, std::vector<Ratfun>(n, Ratfun::zero(p)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) y0[i][j] = m[i][j].coeff(0);
        inv0[i][i] = Ratfun::one(p);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && y0[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw Error(errc::not_invertible, "constant-term matrix is singular");
        std::swap(y0[pivot], y0[col]);
        std::swap(inv0[pivot], inv0[col]);
        Ratfun lead = y0[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            y0[col][j] *= lead;
            inv0[col][j] *= lead;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || y0[row][col].is_zero()) continue;
            Ratfun f = y0[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                y0[row][j] -= f * y0[col][j];
                inv0[row][j] -= f * inv0[col][j];
            }
        }
    }

    // B = Y0^{-1} M = I - E with E(0) = 0.
    SeriesMatrix y0inv_m = series_matrix(n, order, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) y0inv_m[i][j] += m[k][j].scaled(inv0[i][k]);

    SeriesMatrix e = series_matrix(n, order, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            e[i][j] = -y0inv_m[i][j];
            if (i == j)
                e[i][j].set_coeff(0, e[i][j].coeff(0) + Ratfun::one(p));
            else
                e[i][j].set_coeff(0, Ratfun::zero(p));
        }

    SeriesMatrix acc = series_matrix(n, order, p);
    SeriesMatrix term = series_matrix(n, order, p);
    for (std::size_t i = 0; i < n; ++i) {
        acc[i][i] = TruncSeries<Ratfun>::constant(Ratfun::one(p), order);
        term[i][i] = acc[i][i];
    }
    for (std::uint32_t k = 1; k < order; ++k) {
        term = mat_mul(term, e);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc[i][j] += term[i][j];
    }

    // (I - E)^{-1} Y0^{-1}.
    SeriesMatrix out = series_matrix(n, order, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out[i][j] += acc[i][k].scaled(inv0[k][j]);
    return out;
}

/// A random iterative module over theta: pick Y in GL_n(F_p(s)) and take
/// A(T) = Y theta(Y)^{-1}. Then A(U+T) = A(U) thetaU[[T]](A(T)) follows from
/// iterativity of theta on the entries, and the columns of Y are constant
/// vectors of the module.
struct GeneratedModule {
    IdModule module;
    std::vector<ModuleVector> constant_columns;
};

inline GeneratedModule random_iterative_module(Rng& rng, const IterativeDerivation& theta, std::size_t n) {
    const std::uint64_t p = theta.prime();
    const std::uint32_t order = theta.order();
    for (;;) {
        std::vector<std::vector<Ratfun>> y(n, std::vector<Ratfun>(n, Ratfun::zero(p)));
        for (auto& row : y)
            for (auto& cell : row) cell = random_ratfun(rng, p);

        SeriesMatrix theta_y = series_matrix(n, order, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) theta_y[i][j] = apply(theta, y[i][j]);

        SeriesMatrix inv;
        try {
            inv = mat_inverse(theta_y);
        } catch (const Error&) {
            continue;  // singular draw, try again
        }

        SeriesMatrix a = series_matrix(n, order, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    a[i][j] += inv[k][j].scaled(y[i][k]);

        std::vector<TruncSeries<Ratfun>> entries;
        entries.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) entries.push_back(a[i][j]);

        std::vector<ModuleVector> columns(n, ModuleVector(n, Ratfun::zero(p)));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) columns[j][i] = y[i][j];

        return GeneratedModule{IdModule(theta, n, std::move(entries)), std::move(columns)};
    }
}

}  // namespace hsd::testing

#endif
