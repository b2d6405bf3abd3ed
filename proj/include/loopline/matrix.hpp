#pragma once

#include <utility>
#include <vector>

#include "loopline/laurent.hpp"
#include "loopline/ratfunc.hpp"

namespace loopline {

/// Square matrix of Laurent polynomials.
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    explicit LaurentMatrix(size_t n) : n_(n), a_(n * n) {}

    static LaurentMatrix identity(size_t n) {
        LaurentMatrix m(n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly(1);
        return m;
    }

    size_t size() const { return n_; }
    LaurentPoly& at(size_t i, size_t j) { return a_[i * n_ + j]; }
    const LaurentPoly& at(size_t i, size_t j) const { return a_[i * n_ + j]; }

    bool operator==(const LaurentMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    /// entry(i,j)(t) == entry(j,i)(t^{-1}) for all i, j.
    bool is_hermitian() const;

    /// Entrywise evaluation at t = 1.
    std::vector<std::vector<Rat>> eval_at_one() const;

private:
    size_t n_ = 0;
    std::vector<LaurentPoly> a_;
};

/// Square matrix of rational functions (inverses live here).
class RatFuncMatrix {
public:
    RatFuncMatrix() = default;
    explicit RatFuncMatrix(size_t n) : n_(n), a_(n * n) {}

    size_t size() const { return n_; }
    RatFunc& at(size_t i, size_t j) { return a_[i * n_ + j]; }
    const RatFunc& at(size_t i, size_t j) const { return a_[i * n_ + j]; }

    bool is_hermitian() const;
    RatFuncMatrix operator*(const RatFuncMatrix& o) const;
    bool is_identity() const;

private:
    size_t n_ = 0;
    std::vector<RatFunc> a_;
};

/// Exact determinant.  Cofactor expansion for n <= 6, fraction-free Bareiss
/// elimination over the Laurent ring above that.
LaurentPoly det_laurent(const LaurentMatrix& m);

/// The two routes separately, for cross-checks.
LaurentPoly det_cofactor(const LaurentMatrix& m);
LaurentPoly det_bareiss(const LaurentMatrix& m);

/// Normalizes p (with p(1) = +-1 and palindromic up to a unit) to the
/// representative A with A(t) = A(1/t) and A(1) = 1.
/// Throws NotUnimodular / NotSymmetrizable.
LaurentPoly normalize_alexander(const LaurentPoly& p);

/// Adjugate-over-determinant inverse; requires det(M)(1) = +-1
/// (throws NotIntegrable otherwise).  M * M^{-1} = I exactly.
RatFuncMatrix invert_ratfunc_matrix(const LaurentMatrix& m);

/// Eigenvalue sign counts of the symmetric integer matrix M(1), computed by
/// exact congruence elimination with 1x1 and 2x2 pivots.
/// Throws SingularAtOne when det M(1) = 0.
std::pair<int, int> signature_at_1(const LaurentMatrix& m);
std::pair<int, int> signature_of_symmetric(std::vector<std::vector<Rat>> s);

} // namespace loopline
