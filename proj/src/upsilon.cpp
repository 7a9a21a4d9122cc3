#include "k1alex/upsilon.hpp"

#include <sstream>

namespace k1alex {

namespace {

const GroupPtr& pick_group(const GroupPtr& a, const GroupPtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (*a != *b) throw AlgebraError("group mismatch");
    return a;
}

long positive_mod(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

LaurentPolyGA LaurentPolyGA::constant(const GroupAlgebraElem& c) { return monomial(c, 0); }

LaurentPolyGA LaurentPolyGA::monomial(const GroupAlgebraElem& c, long degree) {
    LaurentPolyGA p(c.group());
    p.add_term(degree, c);
    return p;
}

LaurentPolyGA LaurentPolyGA::one(GroupPtr group) { return constant(GroupAlgebraElem::one(std::move(group))); }

long LaurentPolyGA::min_degree() const {
    if (terms_.empty()) throw AlgebraError("zero polynomial has no degree");
    return terms_.begin()->first;
}

long LaurentPolyGA::max_degree() const {
    if (terms_.empty()) throw AlgebraError("zero polynomial has no degree");
    return terms_.rbegin()->first;
}

GroupAlgebraElem LaurentPolyGA::coefficient(long k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? GroupAlgebraElem(group_) : it->second;
}

void LaurentPolyGA::add_term(long k, const GroupAlgebraElem& c) {
    group_ = pick_group(group_, c.group());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPolyGA LaurentPolyGA::shift(long k) const {
    LaurentPolyGA out(group_);
    for (const auto& [d, c] : terms_) out.terms_.emplace(d + k, c);
    return out;
}

LaurentPolyGA LaurentPolyGA::times_group_element(FiniteAbelianGroup::Element h) const {
    LaurentPolyGA out(group_);
    if (terms_.empty()) return out;
    GroupAlgebraElem g(group_, h);
    for (const auto& [d, c] : terms_) out.terms_.emplace(d, c * g);
    return out;
}

LaurentPolyGA LaurentPolyGA::scaled(const mpq_class& s) const {
    LaurentPolyGA out(group_);
    if (s == 0) return out;
    for (const auto& [d, c] : terms_) out.terms_.emplace(d, c * s);
    return out;
}

LaurentPolyGA LaurentPolyGA::apply_aut(const GroupAut& kappa) const {
    LaurentPolyGA out(group_);
    for (const auto& [d, c] : terms_) out.terms_.emplace(d, gr_apply_aut(kappa, c));
    return out;
}

LaurentPolyGA& LaurentPolyGA::operator+=(const LaurentPolyGA& o) {
    group_ = pick_group(group_, o.group_);
    for (const auto& [d, c] : o.terms_) add_term(d, c);
    return *this;
}

LaurentPolyGA& LaurentPolyGA::operator-=(const LaurentPolyGA& o) {
    group_ = pick_group(group_, o.group_);
    for (const auto& [d, c] : o.terms_) add_term(d, -c);
    return *this;
}

LaurentPolyGA operator*(const LaurentPolyGA& a, const LaurentPolyGA& b) {
    LaurentPolyGA out(pick_group(a.group_, b.group_));
    for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_) out.add_term(da + db, ca * cb);
    return out;
}

bool operator==(const LaurentPolyGA& a, const LaurentPolyGA& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [d, c] : a.terms_) {
        if (it->first != d || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

std::string LaurentPolyGA::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : terms_) {
        std::string cs = c.to_string();
        bool negative = false;
        if (c.terms().size() == 1 && cs.front() == '-') {
            negative = true;
            cs.erase(0, 1);
        } else if (c.terms().size() > 1) {
            cs = "(" + cs + ")";
        }
        const std::string tp = d == 1 ? "t" : "t^" + std::to_string(d);
        std::string term;
        if (d == 0)
            term = cs;
        else if (cs == "1")
            term = tp;
        else
            term = cs + "*" + tp;
        if (first)
            os << (negative ? "-" : "") << term;
        else
            os << (negative ? " - " : " + ") << term;
        first = false;
    }
    return os.str();
}

UpsilonMatrix::UpsilonMatrix(GroupPtr group, std::size_t n)
    : group_(std::move(group)), n_(n), entries_(n * n, LaurentPolyGA(group_)) {}

UpsilonMatrix operator*(const UpsilonMatrix& a, const UpsilonMatrix& b) {
    if (a.n_ != b.n_) throw AlgebraError("matrix size mismatch");
    UpsilonMatrix c(a.group_, a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t k = 0; k < a.n_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < a.n_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

UpsilonMatrix operator+(const UpsilonMatrix& a, const UpsilonMatrix& b) {
    if (a.n_ != b.n_) throw AlgebraError("matrix size mismatch");
    UpsilonMatrix c = a;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) c.entries_[i] += b.entries_[i];
    return c;
}

bool operator==(const UpsilonMatrix& a, const UpsilonMatrix& b) { return a.n_ == b.n_ && a.entries_ == b.entries_; }

UpsilonMatrix upsilon_elem(const NovikovSeries& a, long N) {
    if (!a.is_exact()) throw AlgebraError("Upsilon needs a finitely supported series");
    if (N < 1 || N % a.kappa()->order() != 0) throw AlgebraError("Upsilon block size must be a multiple of ord(kappa)");
    const auto& kappa = *a.kappa();
    const auto n = static_cast<std::size_t>(N);
    UpsilonMatrix block(a.group(), n);
    if (a.is_zero()) return block;
    for (long l = a.valuation(); l <= a.max_degree(); ++l) {
        const auto c = a.coefficient(l);
        if (c.is_zero()) continue;
        for (long r = 0; r < N; ++r) {
            const auto row = static_cast<std::size_t>(positive_mod(r + l, N));
            block(row, static_cast<std::size_t>(r)).add_term(l, gr_apply_aut_power(kappa, c, -(r + l)));
        }
    }
    return block;
}

UpsilonMatrix upsilon_matrix(const NovikovMatrix& m, long N) {
    const auto n = static_cast<std::size_t>(N);
    UpsilonMatrix out(m.kappa()->group(), m.size() * n);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            auto block = upsilon_elem(m(i, j), N);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) out(i * n + a, j * n + b) = block(a, b);
        }
    return out;
}

LaurentPolyGA det_commutative(const UpsilonMatrix& input) {
    const std::size_t n = input.size();
    const auto& group = input.group();
    if (n == 0) return LaurentPolyGA::one(group);
    // shift rows into polynomials
    UpsilonMatrix a = input;
    long total_shift = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool any = false;
        long lo = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j).is_zero()) continue;
            lo = any ? std::min(lo, a(i, j).min_degree()) : a(i, j).min_degree();
            any = true;
        }
        if (!any) return LaurentPolyGA(group);
        for (std::size_t j = 0; j < n; ++j) a(i, j) = a(i, j).shift(-lo);
        total_shift += lo;
    }

    // Berkowitz: C holds the characteristic polynomial of the leading principal block.
    std::vector<LaurentPolyGA> c{LaurentPolyGA::one(group), -a(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<LaurentPolyGA> t(r + 2, LaurentPolyGA(group));
        t[0] = LaurentPolyGA::one(group);
        t[1] = -a(r, r);
        std::vector<LaurentPolyGA> v(r, LaurentPolyGA(group));
        for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
        for (std::size_t k = 2; k <= r + 1; ++k) {
            if (k > 2) {
                std::vector<LaurentPolyGA> next(r, LaurentPolyGA(group));
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j)
                        if (!a(i, j).is_zero() && !v[j].is_zero()) next[i] += a(i, j) * v[j];
                v = std::move(next);
            }
            LaurentPolyGA dot(group);
            for (std::size_t j = 0; j < r; ++j)
                if (!a(r, j).is_zero() && !v[j].is_zero()) dot += a(r, j) * v[j];
            t[k] = -dot;
        }
        std::vector<LaurentPolyGA> next(r + 2, LaurentPolyGA(group));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t l = 0; l <= std::min(i, r); ++l)
                if (!t[i - l].is_zero() && !c[l].is_zero()) next[i] += t[i - l] * c[l];
        c = std::move(next);
    }
    LaurentPolyGA det = n % 2 == 0 ? c[n] : -c[n];
    return det.shift(total_shift);
}

LaurentPolyGA metafinite_determinant(const MeridianPresentation& p, const MetaRep& r) {
    const NovikovMatrix a = build_fox_matrix(p, r);
    const auto norm = NovikovSeries::monomial(r.kappa, GroupAlgebraElem::one(r.group()), -p.genus);
    return det_commutative(upsilon_matrix(a, r.N)) * det_commutative(upsilon_elem(norm, r.N));
}

LaurentPolyGA canonical_form(const LaurentPolyGA& p) {
    if (p.is_zero()) return p;
    const long span = p.max_degree() - p.min_degree();
    const long target = span % 2 == 0 ? -span / 2 : 0;
    LaurentPolyGA out = p.shift(target - p.min_degree());
    if (out.terms().begin()->second.terms().front().second < 0) out = -out;
    return out;
}

LaurentPolyGA metafinite_polynomial(const MeridianPresentation& p, const MetaRep& r) {
    return canonical_form(metafinite_determinant(p, r));
}

bool poly_equiv(const LaurentPolyGA& p, const LaurentPolyGA& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    if (p.terms().size() != q.terms().size()) return false;
    const auto& group = pick_group(p.group(), q.group());
    const auto& [p_deg, p_lead] = *p.terms().begin();
    const auto& [p_elem, p_coeff] = p_lead.terms().front();
    for (FiniteAbelianGroup::Element h = 0; h < group->order(); ++h) {
        LaurentPolyGA hq = q.times_group_element(h);
        hq = hq.shift(p_deg - hq.min_degree());
        mpq_class c = hq.terms().begin()->second.coefficient(p_elem);
        if (c == 0) continue;
        if (hq.scaled(p_coeff / c) == p) return true;
    }
    return false;
}

bool is_unit_laurent(const LaurentPolyGA& p) {
    if (p.is_zero()) return false;
    const auto& group = p.group();
    const std::size_t order = group->order();
    if (order == 1) return true;
    const LaurentPolyGA q = p.shift(-p.min_degree());
    const long deg = q.max_degree();
    // det of the regular representation has degree <= |H| * deg in t
    const long points = static_cast<long>(order) * deg + 1;
    for (long t0 = 1; t0 <= points; ++t0) {
        GroupAlgebraElem value(group);
        mpq_class power = 1;
        long k = 0;
        for (const auto& [d, c] : q.terms()) {
            for (; k < d; ++k) power *= t0;
            value += c * power;
        }
        if (gr_is_unit(value)) return true;
    }
    return false;
}

}  // namespace k1alex
