#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k1alex/grouprings.hpp"

namespace k1alex {

inline constexpr long kDefaultPrecision = 24;

/// Truncated element of Q[H]_kappa((tau)) with tau a = kappa(a) tau.
///
/// Terms of degree >= precision() are unknown; an exact series (no precision)
/// is a Laurent polynomial. Stored coefficients never start or end with a
/// zero, so the zero series has no coefficients: it is either the exact zero
/// or O(tau^p).
class NovikovSeries {
public:
    NovikovSeries() = default;
    explicit NovikovSeries(AutPtr kappa) : kappa_(std::move(kappa)) {}

    static NovikovSeries zero(AutPtr kappa) { return NovikovSeries(std::move(kappa)); }
    static NovikovSeries big_o(AutPtr kappa, long p);
    static NovikovSeries one(AutPtr kappa);
    /// c * tau^d, exact.
    static NovikovSeries monomial(AutPtr kappa, const GroupAlgebraElem& c, long d);
    /// Exact Laurent polynomial sum_i coeffs[i] tau^(min_deg + i).
    static NovikovSeries polynomial(AutPtr kappa, long min_deg, std::vector<GroupAlgebraElem> coeffs);
    /// Same, known only below absolute degree prec.
    static NovikovSeries truncated(AutPtr kappa, long min_deg, std::vector<GroupAlgebraElem> coeffs, long prec);

    const AutPtr& kappa() const { return kappa_; }
    const GroupPtr& group() const { return kappa_->group(); }

    bool is_exact() const { return !prec_.has_value(); }
    std::optional<long> precision() const { return prec_; }
    /// True for the exact zero and for O(tau^p).
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the first nonzero term; for O(tau^p) this is p.
    long valuation() const;
    long max_degree() const;  // exact nonzero series only
    /// Known terms beyond the leading one: precision - valuation, or nullopt when exact.
    std::optional<long> window() const;

    /// Coefficient of tau^k. Throws if k lies beyond the precision.
    GroupAlgebraElem coefficient(long k) const;
    const GroupAlgebraElem& leading_coefficient() const;
    bool is_monomial() const { return is_exact() && coeffs_.size() == 1; }

    /// Forget terms of degree >= p.
    NovikovSeries truncate(long p) const;

    NovikovSeries& operator+=(const NovikovSeries& o);
    NovikovSeries& operator-=(const NovikovSeries& o);
    friend NovikovSeries operator+(NovikovSeries a, const NovikovSeries& b) { return a += b; }
    friend NovikovSeries operator-(NovikovSeries a, const NovikovSeries& b) { return a -= b; }
    friend NovikovSeries operator-(NovikovSeries a);
    friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);

    /// Agreement on the common precision window.
    friend bool operator==(const NovikovSeries& a, const NovikovSeries& b);
    /// Exact identity of representation, including precision.
    bool identical(const NovikovSeries& o) const;

    /// Left multiplication by c (a group-algebra scalar).
    NovikovSeries scale_left(const GroupAlgebraElem& c) const;
    /// tau^k * this.
    NovikovSeries shift(long k) const;

    std::string to_string() const;

private:
    void normalize();

    AutPtr kappa_;
    long min_deg_ = 0;
    std::vector<GroupAlgebraElem> coeffs_;
    std::optional<long> prec_;
};

NovikovSeries ns_add(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries ns_mul(const NovikovSeries& a, const NovikovSeries& b);

/// Throws AlgebraError("no leading-unit inverse") if the leading coefficient
/// is not a unit of Q[H]. Monomials invert exactly; otherwise the result
/// carries `window` terms.
NovikovSeries ns_invert(const NovikovSeries& a, long window = kDefaultPrecision);

/// 1 + a_1 tau + a_2 tau^2 + ...
struct WittNormalForm {
    GroupAlgebraElem unit;
    long degree = 0;
    NovikovSeries witt;
};

/// a = (unit * tau^degree) * witt.
WittNormalForm witt_normalize(const NovikovSeries& a);

/// Log coefficients projected to Q[H]/(a - kappa a) at degrees k = 0 mod ord(kappa).
struct LogClass {
    long period = 1;     // ord(kappa)
    long max_degree = 0;  // entries cover every supported k <= max_degree
    std::map<long, OrbitClass> entries;

    const OrbitClass& at(long k) const;
};

/// log(w) = sum (-1)^(n-1) (w-1)^n / n, up to degree min(max_k, precision(w) - 1).
LogClass ns_log(const NovikovSeries& w, long max_k = kDefaultPrecision);

}  // namespace k1alex
