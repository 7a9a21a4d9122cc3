#include "k1alex/grouprings.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace k1alex {

namespace {

long mod(long a, long d) {
    long r = a % d;
    return r < 0 ? r + d : r;
}

const GroupPtr& common_group(const GroupPtr& a, const GroupPtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (*a != *b) throw AlgebraError("group mismatch: " + a->to_string() + " vs " + b->to_string());
    return a;
}

std::vector<GroupAlgebraElem::Term> merge(const std::vector<GroupAlgebraElem::Term>& a,
                                          const std::vector<GroupAlgebraElem::Term>& b, int sign) {
    std::vector<GroupAlgebraElem::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, sign > 0 ? b[j].second : mpq_class(-b[j].second));
            ++j;
        } else {
            mpq_class c = sign > 0 ? mpq_class(a[i].second + b[j].second) : mpq_class(a[i].second - b[j].second);
            if (c != 0) out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> divisors) : divisors_(std::move(divisors)) {
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        if (divisors_[i] < 2) throw AlgebraError("elementary divisor must be >= 2");
        if (i > 0 && divisors_[i] % divisors_[i - 1] != 0)
            throw AlgebraError("elementary divisors must form a divisibility chain");
    }
    stride_.assign(divisors_.size(), 1);
    order_ = 1;
    for (std::size_t i = divisors_.size(); i-- > 0;) {
        stride_[i] = order_;
        order_ *= static_cast<std::size_t>(divisors_[i]);
    }
}

FiniteAbelianGroup::Element FiniteAbelianGroup::element(const std::vector<long>& exponents) const {
    if (exponents.size() != divisors_.size()) throw AlgebraError("exponent vector has wrong length");
    Element e = 0;
    for (std::size_t i = 0; i < divisors_.size(); ++i)
        e += static_cast<std::size_t>(mod(exponents[i], divisors_[i])) * stride_[i];
    return e;
}

std::vector<long> FiniteAbelianGroup::exponents(Element e) const {
    std::vector<long> v(divisors_.size());
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        v[i] = static_cast<long>(e / stride_[i]);
        e %= stride_[i];
    }
    return v;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::add(Element a, Element b) const {
    Element out = 0;
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        auto d = static_cast<std::size_t>(divisors_[i]);
        std::size_t da = a / stride_[i], db = b / stride_[i];
        a %= stride_[i];
        b %= stride_[i];
        out += ((da + db) % d) * stride_[i];
    }
    return out;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::negate(Element a) const { return scale(a, -1); }

FiniteAbelianGroup::Element FiniteAbelianGroup::scale(Element a, long k) const {
    auto v = exponents(a);
    for (auto& x : v) x *= k;
    return element(v);
}

std::string FiniteAbelianGroup::to_string() const {
    if (divisors_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        if (i) s += " + ";
        s += "Z/" + std::to_string(divisors_[i]);
    }
    return s;
}

std::string FiniteAbelianGroup::monomial(Element e) const {
    auto v = exponents(e);
    std::string s;
    bool named = divisors_.size() <= 3;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!named && !s.empty()) s += '*';
        s += named ? std::string(1, "xyz"[i]) : "x" + std::to_string(i + 1);
        if (v[i] != 1) s += "^" + std::to_string(v[i]);
    }
    return s.empty() ? "1" : s;
}

GroupPtr make_group(std::vector<long> divisors) {
    return std::make_shared<const FiniteAbelianGroup>(std::move(divisors));
}

GroupAut::GroupAut(GroupPtr group, std::vector<std::vector<long>> matrix)
    : group_(std::move(group)), matrix_(std::move(matrix)) {
    if (!group_) throw AlgebraError("automorphism needs a group");
    const auto& d = group_->divisors();
    const std::size_t r = d.size();
    if (matrix_.size() != r) throw AlgebraError("automorphism matrix has wrong size");
    for (std::size_t i = 0; i < r; ++i) {
        if (matrix_[i].size() != r) throw AlgebraError("automorphism matrix has wrong size");
        for (std::size_t j = 0; j < r; ++j) {
            matrix_[i][j] = mod(matrix_[i][j], d[i]);
            // column j must respect the order of the j-th generator
            if ((matrix_[i][j] * d[j]) % d[i] != 0) throw AlgebraError("automorphism matrix is not well defined");
        }
    }
    const std::size_t n = group_->order();
    std::vector<Element> perm(n);
    std::vector<char> hit(n, 0);
    for (Element e = 0; e < n; ++e) {
        auto v = group_->exponents(e);
        std::vector<long> w(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) w[i] = mod(w[i] + matrix_[i][j] * v[j], d[i]);
        perm[e] = group_->element(w);
        if (hit[perm[e]]) throw AlgebraError("automorphism matrix is not invertible");
        hit[perm[e]] = 1;
    }
    orbit_rep_.assign(n, n);
    long ord = 1;
    for (Element e = 0; e < n; ++e) {
        if (orbit_rep_[e] != n) continue;
        long len = 0;
        Element f = e;
        do {
            orbit_rep_[f] = e;  // e is the least unvisited index, hence least in its cycle
            f = perm[f];
            ++len;
        } while (f != e);
        ord = std::lcm(ord, len);
    }
    order_ = ord;
    powers_.assign(static_cast<std::size_t>(order_), std::vector<Element>(n));
    for (Element e = 0; e < n; ++e) powers_[0][e] = e;
    for (long k = 1; k < order_; ++k)
        for (Element e = 0; e < n; ++e) powers_[k][e] = perm[powers_[k - 1][e]];
}

GroupAut GroupAut::identity(GroupPtr group) {
    const std::size_t r = group ? group->rank() : 0;
    std::vector<std::vector<long>> m(r, std::vector<long>(r, 0));
    for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
    return GroupAut(std::move(group), std::move(m));
}

GroupAut::Element GroupAut::apply_power(Element e, long k) const { return powers_[static_cast<std::size_t>(mod(k, order_))][e]; }

std::vector<GroupAut::Element> GroupAut::orbit_representatives() const {
    std::vector<Element> reps;
    for (Element e = 0; e < orbit_rep_.size(); ++e)
        if (orbit_rep_[e] == e) reps.push_back(e);
    return reps;
}

std::string GroupAut::to_string() const {
    const auto& d = group_->divisors();
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
        if (i) os << ", ";
        os << '[';
        for (std::size_t j = 0; j < matrix_[i].size(); ++j) {
            if (j) os << ", ";
            long v = matrix_[i][j];
            if (2 * v > d[i]) v -= d[i];
            os << v;
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

long aut_order(const GroupAut& kappa) { return kappa.order(); }

GroupAlgebraElem::GroupAlgebraElem(GroupPtr group, Element e, const mpq_class& c) : group_(std::move(group)) {
    if (!group_ || e >= group_->order()) throw AlgebraError("element outside the group");
    if (c != 0) {
        terms_.emplace_back(e, c);
        terms_.back().second.canonicalize();
    }
}

GroupAlgebraElem GroupAlgebraElem::from_terms(GroupPtr group, std::vector<Term> terms) {
    GroupAlgebraElem out(std::move(group));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& [e, c] : terms) {
        if (e >= out.group_->order()) throw AlgebraError("element outside the group");
        c.canonicalize();
        if (!out.terms_.empty() && out.terms_.back().first == e) {
            out.terms_.back().second += c;
            if (out.terms_.back().second == 0) out.terms_.pop_back();
        } else if (c != 0) {
            out.terms_.emplace_back(e, std::move(c));
        }
    }
    return out;
}

bool GroupAlgebraElem::is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1; }

mpq_class GroupAlgebraElem::coefficient(Element e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, Element x) { return t.first < x; });
    return (it != terms_.end() && it->first == e) ? it->second : mpq_class(0);
}

mpq_class GroupAlgebraElem::augmentation() const {
    mpq_class s = 0;
    for (const auto& t : terms_) s += t.second;
    return s;
}

GroupAlgebraElem& GroupAlgebraElem::operator+=(const GroupAlgebraElem& o) {
    group_ = common_group(group_, o.group_);
    terms_ = merge(terms_, o.terms_, 1);
    return *this;
}

GroupAlgebraElem& GroupAlgebraElem::operator-=(const GroupAlgebraElem& o) {
    group_ = common_group(group_, o.group_);
    terms_ = merge(terms_, o.terms_, -1);
    return *this;
}

GroupAlgebraElem& GroupAlgebraElem::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

GroupAlgebraElem operator-(GroupAlgebraElem a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
}

GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
    const GroupPtr& g = common_group(a.group_, b.group_);
    GroupAlgebraElem out(g);
    if (a.is_zero() || b.is_zero()) return out;
    // integer numerators over a common denominator, one canonicalization per output term
    auto scaled = [](const std::vector<GroupAlgebraElem::Term>& terms, mpz_class& den) {
        den = 1;
        for (const auto& t : terms) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
        std::vector<mpz_class> nums;
        nums.reserve(terms.size());
        for (const auto& t : terms) nums.push_back(t.second.get_num() * (den / t.second.get_den()));
        return nums;
    };
    mpz_class da, db;
    const auto na = scaled(a.terms_, da);
    const auto nb = scaled(b.terms_, db);
    std::vector<mpz_class> acc(g->order());
    std::vector<char> used(g->order(), 0);
    for (std::size_t i = 0; i < na.size(); ++i)
        for (std::size_t j = 0; j < nb.size(); ++j) {
            const auto e = g->add(a.terms_[i].first, b.terms_[j].first);
            mpz_addmul(acc[e].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
            used[e] = 1;
        }
    const mpz_class den = da * db;
    for (std::size_t e = 0; e < acc.size(); ++e) {
        if (!used[e] || acc[e] == 0) continue;
        mpq_class c(acc[e], den);
        c.canonicalize();
        out.terms_.emplace_back(e, std::move(c));
    }
    return out;
}

bool operator==(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
    common_group(a.group_, b.group_);
    return a.terms_ == b.terms_;
}

namespace {

std::string format_combination(const FiniteAbelianGroup& g, const std::vector<GroupAlgebraElem::Term>& terms) {
    if (terms.empty()) return "0";
    mpz_class den = 1;
    for (const auto& t : terms) den = lcm(den, mpz_class(t.second.get_den()));
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        mpz_class num = c.get_num() * (den / c.get_den());
        mpz_class mag = abs(num);
        if (first)
            os << (num < 0 ? "-" : "");
        else
            os << (num < 0 ? " - " : " + ");
        first = false;
        std::string m = g.monomial(e);
        if (m == "1")
            os << mag.get_str();
        else if (mag == 1)
            os << m;
        else
            os << mag.get_str() << m;
    }
    if (den == 1) return os.str();
    if (terms.size() == 1) return os.str() + "/" + den.get_str();
    return "(" + os.str() + ")/" + den.get_str();
}

}  // namespace

std::string GroupAlgebraElem::to_string() const {
    if (is_zero()) return "0";
    return format_combination(*group_, terms_);
}

GroupAlgebraElem gr_add(const GroupAlgebraElem& a, const GroupAlgebraElem& b) { return a + b; }
GroupAlgebraElem gr_mul(const GroupAlgebraElem& a, const GroupAlgebraElem& b) { return a * b; }

GroupAlgebraElem gr_apply_aut_power(const GroupAut& kappa, const GroupAlgebraElem& a, long k) {
    if (a.is_zero()) return a;
    common_group(kappa.group(), a.group());
    std::vector<GroupAlgebraElem::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [e, c] : a.terms()) terms.emplace_back(kappa.apply_power(e, k), c);
    return GroupAlgebraElem::from_terms(kappa.group(), std::move(terms));
}

GroupAlgebraElem gr_apply_aut(const GroupAut& kappa, const GroupAlgebraElem& a) { return gr_apply_aut_power(kappa, a, 1); }

std::vector<std::vector<mpq_class>> regular_representation(const GroupAlgebraElem& a) {
    const auto& g = *a.group();
    const std::size_t n = g.order();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (std::size_t h = 0; h < n; ++h)
        for (const auto& [e, c] : a.terms()) m[g.add(e, h)][h] = c;
    return m;
}

std::size_t rational_rank(std::vector<std::vector<mpq_class>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

mpq_class rational_determinant(std::vector<std::vector<mpq_class>> m) {
    const std::size_t n = m.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

bool gr_is_unit(const GroupAlgebraElem& a) {
    if (a.is_zero()) return false;
    if (a.is_monomial()) return true;
    return rational_rank(regular_representation(a)) == a.group()->order();
}

GroupAlgebraElem gr_inverse(const GroupAlgebraElem& a) {
    if (a.is_zero()) throw AlgebraError("zero is not a unit");
    const auto& g = a.group();
    if (a.is_monomial()) {
        const auto& [e, c] = a.terms()[0];
        return GroupAlgebraElem(g, g->negate(e), 1 / c);
    }
    // solve a * b = 1 through the regular representation
    const std::size_t n = g->order();
    auto m = regular_representation(a);
    for (std::size_t i = 0; i < n; ++i) m[i].push_back(i == 0 ? 1 : 0);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw AlgebraError("element is not a unit: " + a.to_string());
        std::swap(m[p], m[c]);
        mpq_class inv = 1 / m[c][c];
        for (std::size_t j = c; j <= n; ++j) m[c][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    std::vector<GroupAlgebraElem::Term> terms;
    for (std::size_t i = 0; i < n; ++i)
        if (m[i][n] != 0) terms.emplace_back(i, m[i][n]);
    return GroupAlgebraElem::from_terms(g, std::move(terms));
}

mpq_class OrbitClass::total(Element rep) const {
    auto it = totals_.find(rep);
    return it == totals_.end() ? mpq_class(0) : it->second;
}

void OrbitClass::add(Element rep, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = totals_.try_emplace(rep, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) totals_.erase(it);
    }
}

OrbitClass& OrbitClass::operator+=(const OrbitClass& o) {
    group_ = common_group(group_, o.group_);
    for (const auto& [e, c] : o.totals_) add(e, c);
    return *this;
}

std::string OrbitClass::to_string() const {
    if (totals_.empty()) return "0";
    std::vector<GroupAlgebraElem::Term> terms(totals_.begin(), totals_.end());
    return format_combination(*group_, terms);
}

OrbitClass orbit_project(const GroupAlgebraElem& a, const GroupAut& kappa) {
    common_group(kappa.group(), a.group());
    OrbitClass out(kappa.group());
    for (const auto& [e, c] : a.terms()) out.add(kappa.orbit_rep(e), c);
    return out;
}

std::string rational_to_string(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace k1alex
