#include "k1alex/novikov.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace k1alex {

namespace {

constexpr long kInfinite = std::numeric_limits<long>::max();

const AutPtr& common_aut(const AutPtr& a, const AutPtr& b) {
    if (!a || !b) throw AlgebraError("series without automorphism");
    if (a == b) return a;
    if (*a->group() != *b->group() || a->matrix() != b->matrix()) throw AlgebraError("kappa mismatch");
    return a;
}

long min_prec(const std::optional<long>& a, const std::optional<long>& b) {
    return std::min(a.value_or(kInfinite), b.value_or(kInfinite));
}

}  // namespace

NovikovSeries NovikovSeries::big_o(AutPtr kappa, long p) {
    NovikovSeries s(std::move(kappa));
    s.prec_ = p;
    s.min_deg_ = p;
    return s;
}

NovikovSeries NovikovSeries::one(AutPtr kappa) {
    auto g = kappa->group();
    return monomial(std::move(kappa), GroupAlgebraElem::one(g), 0);
}

NovikovSeries NovikovSeries::monomial(AutPtr kappa, const GroupAlgebraElem& c, long d) {
    return polynomial(std::move(kappa), d, {c});
}

NovikovSeries NovikovSeries::polynomial(AutPtr kappa, long min_deg, std::vector<GroupAlgebraElem> coeffs) {
    NovikovSeries s(std::move(kappa));
    s.min_deg_ = min_deg;
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
}

NovikovSeries NovikovSeries::truncated(AutPtr kappa, long min_deg, std::vector<GroupAlgebraElem> coeffs, long prec) {
    NovikovSeries s(std::move(kappa));
    s.min_deg_ = min_deg;
    s.coeffs_ = std::move(coeffs);
    s.prec_ = prec;
    s.normalize();
    return s;
}

void NovikovSeries::normalize() {
    if (prec_) {
        long keep = std::max(0L, *prec_ - min_deg_);
        if (static_cast<long>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        min_deg_ += static_cast<long>(lead);
    }
    if (coeffs_.empty()) min_deg_ = prec_.value_or(0);
}

long NovikovSeries::valuation() const {
    if (coeffs_.empty()) return prec_.value_or(kInfinite);
    return min_deg_;
}

long NovikovSeries::max_degree() const {
    if (coeffs_.empty()) throw AlgebraError("zero series has no degree");
    return min_deg_ + static_cast<long>(coeffs_.size()) - 1;
}

std::optional<long> NovikovSeries::window() const {
    if (!prec_) return std::nullopt;
    return *prec_ - valuation();
}

GroupAlgebraElem NovikovSeries::coefficient(long k) const {
    if (prec_ && k >= *prec_) throw AlgebraError("coefficient beyond precision");
    if (k < min_deg_ || k >= min_deg_ + static_cast<long>(coeffs_.size())) return GroupAlgebraElem(group());
    return coeffs_[static_cast<std::size_t>(k - min_deg_)];
}

const GroupAlgebraElem& NovikovSeries::leading_coefficient() const {
    if (coeffs_.empty()) throw AlgebraError("zero series has no leading coefficient");
    return coeffs_.front();
}

NovikovSeries NovikovSeries::truncate(long p) const {
    NovikovSeries s = *this;
    s.prec_ = std::min(prec_.value_or(kInfinite), p);
    s.normalize();
    return s;
}

NovikovSeries& NovikovSeries::operator+=(const NovikovSeries& o) {
    kappa_ = common_aut(kappa_, o.kappa_);
    long p = min_prec(prec_, o.prec_);
    if (o.coeffs_.empty()) {
        if (p != kInfinite) prec_ = p;
        normalize();
        return *this;
    }
    if (coeffs_.empty()) {
        auto keep = prec_;
        *this = o;
        if (keep) prec_ = p;
        normalize();
        return *this;
    }
    long lo = std::min(min_deg_, o.min_deg_);
    long hi = std::max(max_degree(), o.max_degree());
    std::vector<GroupAlgebraElem> c(static_cast<std::size_t>(hi - lo + 1), GroupAlgebraElem(group()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[static_cast<std::size_t>(min_deg_ - lo) + i] = std::move(coeffs_[i]);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[static_cast<std::size_t>(o.min_deg_ - lo) + i] += o.coeffs_[i];
    coeffs_ = std::move(c);
    min_deg_ = lo;
    if (p != kInfinite) prec_ = p;
    normalize();
    return *this;
}

NovikovSeries operator-(NovikovSeries a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
}

NovikovSeries& NovikovSeries::operator-=(const NovikovSeries& o) { return *this += -o; }

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b) {
    const AutPtr& kappa = common_aut(a.kappa_, b.kappa_);
    const bool a_exact_zero = a.is_exact() && a.is_zero(), b_exact_zero = b.is_exact() && b.is_zero();
    if (a_exact_zero || b_exact_zero) return NovikovSeries::zero(kappa);
    const long va = a.valuation(), vb = b.valuation();
    long p = kInfinite;
    if (a.prec_) p = std::min(p, *a.prec_ + vb);
    if (b.prec_) p = std::min(p, va + *b.prec_);
    if (a.is_zero() || b.is_zero()) return NovikovSeries::big_o(kappa, p);

    long hi = a.max_degree() + b.max_degree();
    if (p != kInfinite) hi = std::min(hi, p - 1);
    const long lo = va + vb;
    std::vector<GroupAlgebraElem> out(static_cast<std::size_t>(std::max(0L, hi - lo + 1)), GroupAlgebraElem(a.group()));
    const long order = kappa->order();
    std::vector<std::vector<GroupAlgebraElem>> twisted(static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        const long di = a.min_deg_ + static_cast<long>(i);
        if (di + vb > hi) break;
        if (a.coeffs_[i].is_zero()) continue;
        const long r = ((di % order) + order) % order;
        auto& tw = twisted[static_cast<std::size_t>(r)];
        if (tw.empty())
            for (const auto& c : b.coeffs_) tw.push_back(gr_apply_aut_power(*kappa, c, r));
        for (std::size_t j = 0; j < tw.size(); ++j) {
            const long d = di + b.min_deg_ + static_cast<long>(j);
            if (d > hi) break;
            if (tw[j].is_zero()) continue;
            out[static_cast<std::size_t>(d - lo)] += a.coeffs_[i] * tw[j];
        }
    }
    if (p == kInfinite) return NovikovSeries::polynomial(kappa, lo, std::move(out));
    return NovikovSeries::truncated(kappa, lo, std::move(out), p);
}

bool operator==(const NovikovSeries& a, const NovikovSeries& b) {
    common_aut(a.kappa_, b.kappa_);
    long p = min_prec(a.prec_, b.prec_);
    if (p == kInfinite) return a.min_deg_ == b.min_deg_ && a.coeffs_ == b.coeffs_;
    if (a.coeffs_.empty() && b.coeffs_.empty()) return true;
    long lo = kInfinite, hi = std::numeric_limits<long>::min();
    for (const auto* s : {&a, &b}) {
        if (s->coeffs_.empty()) continue;
        lo = std::min(lo, s->min_deg_);
        hi = std::max(hi, s->max_degree());
    }
    hi = std::min(hi, p - 1);
    for (long k = lo; k <= hi; ++k)
        if (!(a.coefficient(k) == b.coefficient(k))) return false;
    return true;
}

bool NovikovSeries::identical(const NovikovSeries& o) const {
    return prec_ == o.prec_ && min_deg_ == o.min_deg_ && coeffs_ == o.coeffs_;
}

NovikovSeries NovikovSeries::scale_left(const GroupAlgebraElem& c) const {
    NovikovSeries s = *this;
    for (auto& x : s.coeffs_) x = c * x;
    s.normalize();
    return s;
}

NovikovSeries NovikovSeries::shift(long k) const {
    NovikovSeries s = *this;
    for (auto& x : s.coeffs_) x = gr_apply_aut_power(*kappa_, x, k);
    s.min_deg_ += k;
    if (s.prec_) *s.prec_ += k;
    return s;
}

namespace {

std::string tau_power(long k) {
    if (k == 0) return "";
    if (k == 1) return "tau";
    return "tau^" + std::to_string(k);
}

}  // namespace

std::string NovikovSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        if (c.is_zero()) continue;
        const long k = min_deg_ + static_cast<long>(i);
        std::string cs = c.to_string();
        bool negative = false;
        if (c.terms().size() == 1 && cs.front() == '-') {
            negative = true;
            cs.erase(0, 1);
        } else if (c.terms().size() > 1) {
            cs = "(" + cs + ")";
        }
        std::string term;
        if (k == 0)
            term = cs;
        else if (cs == "1")
            term = tau_power(k);
        else
            term = cs + "*" + tau_power(k);
        if (first)
            os << (negative ? "-" : "") << term;
        else
            os << (negative ? " - " : " + ") << term;
        first = false;
    }
    if (prec_) {
        if (!first) os << " + ";
        os << "O(" << (*prec_ == 0 ? std::string("1") : tau_power(*prec_)) << ")";
    } else if (first) {
        os << "0";
    }
    return os.str();
}

NovikovSeries ns_add(const NovikovSeries& a, const NovikovSeries& b) { return a + b; }
NovikovSeries ns_mul(const NovikovSeries& a, const NovikovSeries& b) { return a * b; }

NovikovSeries ns_invert(const NovikovSeries& a, long window) {
    if (a.is_zero()) throw AlgebraError("cannot invert a zero series");
    const auto& kappa = a.kappa();
    const auto& lead = a.leading_coefficient();
    if (!gr_is_unit(lead)) throw AlgebraError("no leading-unit inverse");
    const long d = a.valuation();
    // (lead tau^d)^-1 = kappa^-d(lead^-1) tau^-d
    auto mono_inv = NovikovSeries::monomial(kappa, gr_apply_aut_power(*kappa, gr_inverse(lead), -d), -d);
    if (a.is_monomial()) return mono_inv;

    const long w = a.is_exact() ? window : std::min(window, *a.window());
    auto u = mono_inv * a;  // 1 + q_1 tau + ...
    std::vector<GroupAlgebraElem> b;
    b.reserve(static_cast<std::size_t>(w));
    b.push_back(GroupAlgebraElem::one(a.group()));
    for (long n = 1; n < w; ++n) {
        GroupAlgebraElem acc(a.group());
        for (long i = 1; i <= n; ++i) {
            const auto& bi = b[static_cast<std::size_t>(n - i)];
            if (bi.is_zero()) continue;
            auto q = u.coefficient(i);
            if (q.is_zero()) continue;
            acc += q * gr_apply_aut_power(*kappa, bi, i);
        }
        b.push_back(-acc);
    }
    auto u_inv = NovikovSeries::truncated(kappa, 0, std::move(b), w);
    return u_inv * mono_inv;
}

WittNormalForm witt_normalize(const NovikovSeries& a) {
    if (a.is_zero()) throw AlgebraError("zero series has no Witt normal form");
    const auto& lead = a.leading_coefficient();
    if (!gr_is_unit(lead)) throw AlgebraError("non-unit leading coefficient");
    const long d = a.valuation();
    auto w = a.scale_left(gr_inverse(lead)).shift(-d);
    return WittNormalForm{lead, d, std::move(w)};
}

const OrbitClass& LogClass::at(long k) const {
    auto it = entries.find(k);
    if (it == entries.end()) throw AlgebraError("log coefficient " + std::to_string(k) + " not available");
    return it->second;
}

LogClass ns_log(const NovikovSeries& w, long max_k) {
    if (w.is_zero() || w.valuation() != 0 || !w.leading_coefficient().is_one())
        throw AlgebraError("log needs a Witt vector 1 + a_1 tau + ...");
    const auto& kappa = w.kappa();
    long top = max_k;
    if (w.precision()) top = std::min(top, *w.precision() - 1);
    LogClass out;
    out.period = kappa->order();
    out.max_degree = top;
    if (top < 1) return out;

    auto mu = (w - NovikovSeries::one(kappa)).truncate(top + 1);
    auto sum = NovikovSeries::big_o(kappa, top + 1);
    auto pw = mu;
    for (long n = 1; n <= top && !pw.is_zero(); ++n) {
        mpq_class c(n % 2 == 1 ? 1 : -1, n);
        c.canonicalize();
        sum += pw.scale_left(GroupAlgebraElem(w.group(), 0, c));
        pw = (pw * mu).truncate(top + 1);
    }
    for (long k = out.period; k <= top; k += out.period) out.entries.emplace(k, orbit_project(sum.coefficient(k), *kappa));
    return out;
}

}  // namespace k1alex
