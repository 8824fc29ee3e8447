#ifndef HSD_IDMODULE_HPP
#define HSD_IDMODULE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsd/biseries.hpp"
#include "hsd/derivation.hpp"
#include "hsd/equivalence.hpp"
#include "hsd/errors.hpp"

namespace hsd {

/// A rank-n module over (F, theta) with a compatible derivation theta_M, in
/// matrix form: theta_M(e_j) = sum_i A_ij(T) e_i with A(0) = I. Since
/// theta_M(sum f_j e_j) = sum theta(f_j) theta_M(e_j), the matrix determines
/// theta_M on all of M = F^n.
///
/// Iterativity of theta_M in this encoding is the bivariate matrix identity
///     A(U + T) = A(U) . thetaU[[T]](A(T)),
/// obtained by pushing the operator rule thetaM_U[[T]] . thetaM_T =
/// thetaM_{U+T} through the basis: the left side expands each basis vector
/// twice, once in T and once in U, and collecting coordinates produces the
/// product on the right in exactly this order under the column convention
/// above.
class IdModule {
   public:
    IdModule(IterativeDerivation theta, std::size_t rank, std::vector<TruncSeries<Ratfun>> entries_row_major)
        : theta_(std::move(theta)), n_(rank), a_(std::move(entries_row_major)) {
        if (n_ == 0) throw Error(errc::bad_input, "module rank must be positive");
        if (a_.size() != n_ * n_)
            throw Error(errc::bad_input, "expected " + std::to_string(n_ * n_) + " matrix entries");
        for (const auto& e : a_) {
            if (e.order() != theta_.order())
                throw Error(errc::order_mismatch, "matrix entries must carry the derivation's order");
            if (e.prime() != theta_.prime())
                throw Error(errc::prime_mismatch, "matrix entries over a different field");
        }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                const Ratfun& c0 = entry(i, j).coeff(0);
                bool ok = (i == j) ? c0.is_one() : c0.is_zero();
                if (!ok) throw Error(errc::bad_input, "A(0) must be the identity matrix");
            }
    }

    /// The trivial module of a given rank: A(T) = I.
    static IdModule trivial(IterativeDerivation theta, std::size_t rank) {
        std::vector<TruncSeries<Ratfun>> entries;
        entries.reserve(rank * rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j)
                entries.push_back(i == j
                                      ? TruncSeries<Ratfun>::constant(Ratfun::one(theta.prime()), theta.order())
                                      : TruncSeries<Ratfun>::zero(theta.order(), theta.prime()));
        return IdModule(std::move(theta), rank, std::move(entries));
    }

    std::size_t rank() const { return n_; }
    const IterativeDerivation& derivation() const { return theta_; }
    std::uint64_t prime() const { return theta_.prime(); }
    std::uint32_t order() const { return theta_.order(); }

    const TruncSeries<Ratfun>& entry(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }

    const std::vector<TruncSeries<Ratfun>>& entries() const { return a_; }

    friend bool operator==(const IdModule& a, const IdModule& b) {
        return a.theta_ == b.theta_ && a.n_ == b.n_ && a.a_ == b.a_;
    }
    friend bool operator!=(const IdModule& a, const IdModule& b) { return !(a == b); }

   private:
    IterativeDerivation theta_;
    std::size_t n_;
    std::vector<TruncSeries<Ratfun>> a_;
};

/// Coordinates of an element of M = F^n in the implicit basis.
using ModuleVector = std::vector<Ratfun>;

struct ModuleMismatch {
    std::size_t row, col;
    std::uint32_t u_exp, t_exp;
    Ratfun lhs, rhs;
};

struct ModuleCheckReport {
    bool pass;
    std::uint32_t order;
    std::optional<ModuleMismatch> first_failure;
};

/// Entrywise check of A(U + T) = A(U) . thetaU[[T]](A(T)) to total degree N.
/// The ambient theta is assumed iterative (certify it separately).
inline ModuleCheckReport verify_module_iterativity(const IdModule& m) {
    const std::size_t n = m.rank();
    const IterativeDerivation& theta = m.derivation();
    std::vector<TruncBiSeries<Ratfun>> a_in_u, a_mapped;
    a_in_u.reserve(n * n);
    a_mapped.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a_in_u.push_back(as_u_series(m.entry(i, j)));
            a_mapped.push_back(
                map_coefficients(m.entry(i, j), [&](const Ratfun& c) { return apply(theta, c); }));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TruncBiSeries<Ratfun> lhs = substitute_u_plus_t(m.entry(i, j));
            TruncBiSeries<Ratfun> rhs(m.order(), m.prime());
            for (std::size_t k = 0; k < n; ++k) rhs += a_in_u[i * n + k] * a_mapped[k * n + j];
            if (auto mm = first_mismatch(lhs, rhs))
                return ModuleCheckReport{false, m.order(),
                                         ModuleMismatch{i, j, mm->u_exp, mm->t_exp, mm->lhs, mm->rhs}};
        }
    return ModuleCheckReport{true, m.order(), std::nullopt};
}

/// theta_M applied to a coordinate vector: component i of the image is
/// sum_j A_ij(T) theta(f_j).
inline std::vector<TruncSeries<Ratfun>> apply_module(const IdModule& m, const ModuleVector& v) {
    if (v.size() != m.rank())
        throw Error(errc::bad_input, "vector length " + std::to_string(v.size()) + " does not match rank " +
                                         std::to_string(m.rank()));
    const std::size_t n = m.rank();
    std::vector<TruncSeries<Ratfun>> images;
    images.reserve(n);
    for (std::size_t j = 0; j < n; ++j) images.push_back(apply(m.derivation(), v[j]));
    std::vector<TruncSeries<Ratfun>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        TruncSeries<Ratfun> acc(m.order(), m.prime());
        for (std::size_t j = 0; j < n; ++j) acc += m.entry(i, j) * images[j];
        out.push_back(std::move(acc));
    }
    return out;
}

/// m is constant when theta_M(m) = m T^0 up to the order.
inline bool is_constant_vector(const IdModule& m, const ModuleVector& v) {
    std::vector<TruncSeries<Ratfun>> image = apply_module(m, v);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (image[i] != TruncSeries<Ratfun>::constant(v[i], m.order())) return false;
    return true;
}

/// Transport along an equivalence: entries compose with P and the ambient
/// derivation becomes lambda . theta. For invertible lambda this carries
/// iterative modules to iterative modules over the twisted derivation and
/// preserves constancy of vectors.
inline IdModule transform_module(const IdModule& m, const Substitution& lambda) {
    if (!lambda.invertible())
        throw Error(errc::not_invertible, "module transport needs an invertible substitution");
    if (lambda.order() != m.order())
        throw Error(errc::order_mismatch, "module and substitution have different orders");
    if (lambda.prime() != m.prime())
        throw Error(errc::prime_mismatch, "module and substitution over different fields");
    std::vector<TruncSeries<Ratfun>> entries;
    entries.reserve(m.rank() * m.rank());
    for (const auto& e : m.entries()) entries.push_back(compose(e, lambda.parameter()));
    return IdModule(apply_substitution(m.derivation(), lambda), m.rank(), std::move(entries));
}

}  // namespace hsd

#endif
