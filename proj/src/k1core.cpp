#include "k1alex/k1core.hpp"

#include <limits>

#include "k1alex/upsilon.hpp"

namespace k1alex {

NovikovMatrix::NovikovMatrix(AutPtr kappa, std::size_t n)
    : kappa_(std::move(kappa)), n_(n), entries_(n * n, NovikovSeries::zero(kappa_)) {}

bool NovikovMatrix::is_exact() const {
    for (const auto& e : entries_)
        if (!e.is_exact()) return false;
    return true;
}

NovikovMatrix operator*(const NovikovMatrix& a, const NovikovMatrix& b) {
    if (a.n_ != b.n_) throw AlgebraError("matrix size mismatch");
    NovikovMatrix c(a.kappa_, a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t j = 0; j < a.n_; ++j)
            for (std::size_t k = 0; k < a.n_; ++k) c(i, j) += a(i, k) * b(k, j);
    return c;
}

NovikovMatrix identity_matrix(AutPtr kappa, std::size_t n) {
    NovikovMatrix m(kappa, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = NovikovSeries::one(kappa);
    return m;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

std::string EliminationStep::to_string() const {
    switch (kind) {
        case Kind::row_swap: return "swap rows " + std::to_string(a) + "," + std::to_string(b) + " (sign -1)";
        case Kind::col_swap: return "swap columns " + std::to_string(a) + "," + std::to_string(b) + " (sign -1)";
        case Kind::pivot:
            return "pivot " + std::to_string(a) + " at tau^" + std::to_string(degree) +
                   (monomial ? " (unit monomial)" : " (unit leading coefficient)");
        case Kind::row_combine: return "row " + std::to_string(a) + " += row " + std::to_string(b);
    }
    return "?";
}

GroupAlgebraElem evaluate(const MetaRep& r, const FreeRingElem& a) {
    std::vector<GroupAlgebraElem::Term> terms;
    for (const auto& [w, c] : a.terms()) terms.emplace_back(evaluate(r, w), mpq_class(c));
    return GroupAlgebraElem::from_terms(r.group(), std::move(terms));
}

NovikovMatrix build_fox_matrix(const MeridianPresentation& p, const MetaRep& r) {
    check_presentation(p);
    if (auto v = validate_rep(p, r)) throw ValidationError("representation violates relator: " + v->detail);
    const auto n = static_cast<std::size_t>(p.rank());
    NovikovMatrix m(r.kappa, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const auto g = Generator::x(static_cast<int>(i + 1));
            auto dy = evaluate(r, fox_derivative(p.y[j], g));
            auto dz = evaluate(r, fox_derivative(p.z[j], g));
            // tau * c = kappa(c) * tau
            m(j, i) = NovikovSeries::polynomial(r.kappa, 0, {-dz, gr_apply_aut(*r.kappa, dy)});
        }
    return m;
}

namespace {

struct PivotChoice {
    std::size_t row;
    std::size_t col;
    bool monomial;
};

std::optional<PivotChoice> choose_pivot(const std::vector<std::vector<NovikovSeries>>& w, std::size_t k) {
    const std::size_t n = w.size();
    for (bool want_monomial : {true, false}) {
        std::optional<PivotChoice> best;
        long best_deg = std::numeric_limits<long>::max();
        for (std::size_t j = k; j < n; ++j)
            for (std::size_t i = k; i < n; ++i) {
                const auto& e = w[i][j];
                if (e.is_zero() || (want_monomial && !e.is_monomial())) continue;
                if (e.valuation() >= best_deg) continue;
                if (!gr_is_unit(e.leading_coefficient())) continue;
                best = PivotChoice{i, j, e.is_monomial()};
                best_deg = e.valuation();
            }
        if (best) return best;
    }
    return std::nullopt;
}

}  // namespace

K1Report eliminate(const NovikovMatrix& m, long precision) {
    K1Report rep;
    rep.precision = precision;
    const std::size_t n = m.size();
    std::vector<std::vector<NovikovSeries>> w(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i].push_back(m(i, j));

    for (std::size_t k = 0; k < n; ++k) {
        auto choice = choose_pivot(w, k);
        if (!choice) {
            rep.invertible = Verdict::indeterminate;
            return rep;
        }
        if (choice->row != k) {
            std::swap(w[k], w[choice->row]);
            rep.swap_sign = -rep.swap_sign;
            rep.pivot_trace.push_back({EliminationStep::Kind::row_swap, k, choice->row});
        }
        if (choice->col != k) {
            for (auto& row : w) std::swap(row[k], row[choice->col]);
            rep.swap_sign = -rep.swap_sign;
            rep.pivot_trace.push_back({EliminationStep::Kind::col_swap, k, choice->col});
        }
        const NovikovSeries& p = w[k][k];
        rep.pivot_trace.push_back({EliminationStep::Kind::pivot, k, k, p.valuation(), choice->monomial});
        rep.diagonal.push_back(p);
        if (k + 1 == n) break;
        const NovikovSeries p_inv = ns_invert(p, precision);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (w[i][k].is_zero()) continue;
            const NovikovSeries f = w[i][k] * p_inv;
            for (std::size_t j = k + 1; j < n; ++j)
                if (!w[k][j].is_zero()) w[i][j] -= f * w[k][j];
            w[i][k] = NovikovSeries::zero(m.kappa());
        }
    }
    rep.invertible = Verdict::yes;
    return rep;
}

K1Report k1_invariant(const MeridianPresentation& p, const MetaRep& r, long precision) {
    const NovikovMatrix a = build_fox_matrix(p, r);
    K1Report rep = eliminate(a, precision);
    if (rep.invertible == Verdict::yes) {
        const auto& kappa = r.kappa;
        NovikovSeries prod =
            NovikovSeries::monomial(kappa, GroupAlgebraElem(r.group(), 0, rep.swap_sign), 0);
        for (const auto& d : rep.diagonal) prod = prod * d;
        rep.delta = prod.shift(-p.genus);
        rep.witt = witt_normalize(*rep.delta);
        rep.logs = ns_log(rep.witt->witt, precision);
    }
    if (a.is_exact()) {
        rep.upsilon_unit = is_unit_laurent(det_commutative(upsilon_matrix(a, r.N)));
        if (!*rep.upsilon_unit && rep.invertible == Verdict::indeterminate) rep.invertible = Verdict::no;
    }
    return rep;
}

std::vector<FiberedVerdict> fibered_obstruction(const MeridianPresentation& p, const std::vector<MetaRep>& reps,
                                                long precision) {
    std::vector<FiberedVerdict> out;
    for (const auto& r : reps) {
        FiberedVerdict v{Verdict::indeterminate, k1_invariant(p, r, precision)};
        if (v.report.invertible == Verdict::yes || v.report.upsilon_unit == true)
            v.invertible = Verdict::yes;
        else if (v.report.upsilon_unit == false)
            v.invertible = Verdict::no;
        out.push_back(std::move(v));
    }
    return out;
}

std::string fibered_summary(const std::vector<FiberedVerdict>& verdicts) {
    bool all_yes = true;
    for (const auto& v : verdicts) {
        if (v.invertible == Verdict::no) return "non-fibered certified";
        if (v.invertible != Verdict::yes) all_yes = false;
    }
    return all_yes ? "no obstruction found (consistent-with-fibered)" : "inconclusive";
}

}  // namespace k1alex
