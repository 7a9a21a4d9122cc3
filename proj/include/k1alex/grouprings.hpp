#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace k1alex {

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Z/d_1 + ... + Z/d_r with d_1 | d_2 | ... | d_r, every d_i >= 2.
/// Elements are indexed in mixed radix with the first coordinate most
/// significant, so index order is lexicographic order of exponent vectors.
class FiniteAbelianGroup {
public:
    using Element = std::size_t;

    FiniteAbelianGroup() = default;  // trivial group
    explicit FiniteAbelianGroup(std::vector<long> divisors);

    const std::vector<long>& divisors() const { return divisors_; }
    std::size_t rank() const { return divisors_.size(); }
    std::size_t order() const { return order_; }

    Element identity() const { return 0; }
    Element element(const std::vector<long>& exponents) const;
    std::vector<long> exponents(Element e) const;
    Element add(Element a, Element b) const;
    Element negate(Element a) const;
    Element scale(Element a, long k) const;

    std::string to_string() const;  // "Z/5 + Z/5", "0" when trivial
    /// Monomial name in the generators x, y, z (x1, x2, ... beyond rank 3).
    std::string monomial(Element e) const;

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
    std::vector<long> divisors_;
    std::vector<std::size_t> stride_;
    std::size_t order_ = 1;
};

using GroupPtr = std::shared_ptr<const FiniteAbelianGroup>;

GroupPtr make_group(std::vector<long> divisors);

/// Automorphism of H given by an integer matrix acting on exponent columns.
class GroupAut {
public:
    using Element = FiniteAbelianGroup::Element;

    /// Throws AlgebraError if the matrix is not a well-defined bijection.
    GroupAut(GroupPtr group, std::vector<std::vector<long>> matrix);
    static GroupAut identity(GroupPtr group);

    const GroupPtr& group() const { return group_; }
    const std::vector<std::vector<long>>& matrix() const { return matrix_; }
    long order() const { return order_; }

    Element apply(Element e) const { return powers_[1 % order_][e]; }
    /// kappa^k(e) for any integer k.
    Element apply_power(Element e, long k) const;
    /// Lexicographically least member of the orbit of e.
    Element orbit_rep(Element e) const { return orbit_rep_[e]; }
    std::vector<Element> orbit_representatives() const;

    /// Row-major integer matrix with entries reduced to symmetric residues.
    std::string to_string() const;

private:
    GroupPtr group_;
    std::vector<std::vector<long>> matrix_;
    long order_ = 1;
    std::vector<std::vector<Element>> powers_;  // powers_[k][e] = kappa^k(e)
    std::vector<Element> orbit_rep_;
};

using AutPtr = std::shared_ptr<const GroupAut>;

long aut_order(const GroupAut& kappa);

/// Exact rational combination of group elements, sorted by element index.
class GroupAlgebraElem {
public:
    using Element = FiniteAbelianGroup::Element;
    using Term = std::pair<Element, mpq_class>;

    GroupAlgebraElem() = default;
    explicit GroupAlgebraElem(GroupPtr group) : group_(std::move(group)) {}
    GroupAlgebraElem(GroupPtr group, Element e, const mpq_class& c = 1);
    static GroupAlgebraElem from_terms(GroupPtr group, std::vector<Term> terms);
    static GroupAlgebraElem one(GroupPtr group) { return GroupAlgebraElem(std::move(group), 0, 1); }

    const GroupPtr& group() const { return group_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// Single term c*h with c != 0.
    bool is_monomial() const { return terms_.size() == 1; }
    mpq_class coefficient(Element e) const;
    /// Sum of coefficients (image under H -> 1).
    mpq_class augmentation() const;

    GroupAlgebraElem& operator+=(const GroupAlgebraElem& o);
    GroupAlgebraElem& operator-=(const GroupAlgebraElem& o);
    GroupAlgebraElem& operator*=(const mpq_class& c);

    friend GroupAlgebraElem operator+(GroupAlgebraElem a, const GroupAlgebraElem& b) { return a += b; }
    friend GroupAlgebraElem operator-(GroupAlgebraElem a, const GroupAlgebraElem& b) { return a -= b; }
    friend GroupAlgebraElem operator-(GroupAlgebraElem a);
    friend GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
    friend GroupAlgebraElem operator*(GroupAlgebraElem a, const mpq_class& c) { return a *= c; }
    friend bool operator==(const GroupAlgebraElem& a, const GroupAlgebraElem& b);

    /// "(3 + 2x + x^2)/2" style: common denominator pulled out.
    std::string to_string() const;

private:
    GroupPtr group_;
    std::vector<Term> terms_;
};

GroupAlgebraElem gr_add(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
GroupAlgebraElem gr_mul(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
GroupAlgebraElem gr_apply_aut(const GroupAut& kappa, const GroupAlgebraElem& a);
GroupAlgebraElem gr_apply_aut_power(const GroupAut& kappa, const GroupAlgebraElem& a, long k);

/// Row-major |H| x |H| matrix of multiplication by a: entry (g, h) is the
/// coefficient of g in a*h.
std::vector<std::vector<mpq_class>> regular_representation(const GroupAlgebraElem& a);

bool gr_is_unit(const GroupAlgebraElem& a);
/// Throws AlgebraError when a is not a unit.
GroupAlgebraElem gr_inverse(const GroupAlgebraElem& a);

/// Image of an element of Q[H] in Q[H]/(a - kappa(a)).
class OrbitClass {
public:
    using Element = FiniteAbelianGroup::Element;

    OrbitClass() = default;
    explicit OrbitClass(GroupPtr group) : group_(std::move(group)) {}

    const GroupPtr& group() const { return group_; }
    /// Keyed by orbit representative; zero totals are not stored.
    const std::map<Element, mpq_class>& totals() const { return totals_; }
    bool is_zero() const { return totals_.empty(); }
    mpq_class total(Element rep) const;
    void add(Element rep, const mpq_class& c);

    OrbitClass& operator+=(const OrbitClass& o);
    friend OrbitClass operator+(OrbitClass a, const OrbitClass& b) { return a += b; }
    friend bool operator==(const OrbitClass& a, const OrbitClass& b) { return a.totals_ == b.totals_; }

    /// The class written on its orbit representatives, e.g. "(3 + 5x + 2x^2)/2".
    std::string to_string() const;

private:
    GroupPtr group_;
    std::map<Element, mpq_class> totals_;
};

OrbitClass orbit_project(const GroupAlgebraElem& a, const GroupAut& kappa);

/// Exact Gaussian elimination over Q.
std::size_t rational_rank(std::vector<std::vector<mpq_class>> m);
mpq_class rational_determinant(std::vector<std::vector<mpq_class>> m);

std::string rational_to_string(const mpq_class& q);  // "p/q" or "p"

}  // namespace k1alex
