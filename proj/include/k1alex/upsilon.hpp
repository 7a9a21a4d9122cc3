#pragma once

#include <map>
#include <string>
#include <vector>

#include "k1alex/grouprings.hpp"
#include "k1alex/k1core.hpp"
#include "k1alex/metarep.hpp"
#include "k1alex/novikov.hpp"
#include "k1alex/presentation.hpp"

namespace k1alex {

/// Commutative Laurent polynomial in t over Q[H].
class LaurentPolyGA {
public:
    LaurentPolyGA() = default;
    explicit LaurentPolyGA(GroupPtr group) : group_(std::move(group)) {}
    static LaurentPolyGA constant(const GroupAlgebraElem& c);
    static LaurentPolyGA monomial(const GroupAlgebraElem& c, long degree);
    static LaurentPolyGA one(GroupPtr group);

    const GroupPtr& group() const { return group_; }
    const std::map<long, GroupAlgebraElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long min_degree() const;
    long max_degree() const;
    GroupAlgebraElem coefficient(long k) const;
    void add_term(long k, const GroupAlgebraElem& c);

    /// t^k * this.
    LaurentPolyGA shift(long k) const;
    /// Multiply every coefficient by the group element h.
    LaurentPolyGA times_group_element(FiniteAbelianGroup::Element h) const;
    LaurentPolyGA scaled(const mpq_class& c) const;
    /// Apply kappa to every coefficient.
    LaurentPolyGA apply_aut(const GroupAut& kappa) const;

    LaurentPolyGA& operator+=(const LaurentPolyGA& o);
    LaurentPolyGA& operator-=(const LaurentPolyGA& o);
    friend LaurentPolyGA operator+(LaurentPolyGA a, const LaurentPolyGA& b) { return a += b; }
    friend LaurentPolyGA operator-(LaurentPolyGA a, const LaurentPolyGA& b) { return a -= b; }
    friend LaurentPolyGA operator-(const LaurentPolyGA& a) { return a.scaled(-1); }
    friend LaurentPolyGA operator*(const LaurentPolyGA& a, const LaurentPolyGA& b);
    friend bool operator==(const LaurentPolyGA& a, const LaurentPolyGA& b);

    /// Terms by increasing t-degree: "t^-2 + (-3 - x - x^2) + t^2".
    std::string to_string() const;

private:
    GroupPtr group_;
    std::map<long, GroupAlgebraElem> terms_;
};

/// Square matrix of LaurentPolyGA, row-major.
class UpsilonMatrix {
public:
    UpsilonMatrix(GroupPtr group, std::size_t n);

    std::size_t size() const { return n_; }
    const GroupPtr& group() const { return group_; }
    LaurentPolyGA& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const LaurentPolyGA& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    friend UpsilonMatrix operator*(const UpsilonMatrix& a, const UpsilonMatrix& b);
    friend UpsilonMatrix operator+(const UpsilonMatrix& a, const UpsilonMatrix& b);
    friend bool operator==(const UpsilonMatrix& a, const UpsilonMatrix& b);

private:
    GroupPtr group_;
    std::size_t n_;
    std::vector<LaurentPolyGA> entries_;
};

/// N x N block of a Laurent polynomial in tau: a tau^l contributes
/// kappa^-(r+l)(a) t^l at (row (r+l) mod N, column r). Needs kappa^N = id.
UpsilonMatrix upsilon_elem(const NovikovSeries& a, long N);
UpsilonMatrix upsilon_matrix(const NovikovMatrix& m, long N);

/// Division-free (Berkowitz) determinant over Q[H][t, t^-1].
LaurentPolyGA det_commutative(const UpsilonMatrix& m);

/// det(Upsilon(A_{F,W})) * det(Upsilon(tau^-g)), unnormalized.
LaurentPolyGA metafinite_determinant(const MeridianPresentation& p, const MetaRep& r);
/// Shifted to a symmetric t-span (min degree -span/2 when span is even, else 0)
/// and signed so the first coefficient of the lowest term is positive.
LaurentPolyGA canonical_form(const LaurentPolyGA& p);
LaurentPolyGA metafinite_polynomial(const MeridianPresentation& p, const MetaRep& r);

/// p = c * t^a * h * q for some rational c != 0, integer a and h in H.
bool poly_equiv(const LaurentPolyGA& p, const LaurentPolyGA& q);

/// True iff p is a unit of Q[H]((t)), i.e. not a zero divisor in Q[H][t^+-1].
bool is_unit_laurent(const LaurentPolyGA& p);

}  // namespace k1alex
