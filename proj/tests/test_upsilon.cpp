#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k1alex/cover.hpp"
#include "k1alex/upsilon.hpp"
#include "log_oracle.hpp"
#include "support.hpp"

using namespace k1alex;
using k1alex::testing::leibniz_det;
using k1alex::testing::random_elem;

namespace {

struct Fixture {
    GroupPtr z5 = make_group({5});
    AutPtr neg = std::make_shared<const GroupAut>(z5, std::vector<std::vector<long>>{{-1}});
    GroupPtr z44 = make_group({4, 4});
    AutPtr k3 = std::make_shared<const GroupAut>(z44, std::vector<std::vector<long>>{{2, -1}, {-1, 1}});
    GroupPtr trivial = make_group({});
    AutPtr id = std::make_shared<const GroupAut>(GroupAut::identity(trivial));

    LaurentPolyGA t(const GroupPtr& g, long d, long c = 1) const {
        return LaurentPolyGA::monomial(GroupAlgebraElem(g, 0, c), d);
    }
};

NovikovSeries random_poly(std::mt19937_64& rng, const AutPtr& kappa) {
    std::uniform_int_distribution<long> deg(-3, 3), len(1, 4);
    std::vector<GroupAlgebraElem> coeffs;
    for (long i = len(rng); i > 0; --i) coeffs.push_back(random_elem(rng, kappa->group(), 3, 2));
    return NovikovSeries::polynomial(kappa, deg(rng), coeffs);
}

UpsilonMatrix random_matrix(std::mt19937_64& rng, const GroupPtr& g, std::size_t n) {
    std::uniform_int_distribution<long> deg(-1, 2);
    UpsilonMatrix m(g, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            LaurentPolyGA p(g);
            for (int k = 0; k < 2; ++k) p.add_term(deg(rng), random_elem(rng, g, 2, 2));
            m(i, j) = p;
        }
    return m;
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_rem(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size()) {
        const mpq_class f = a.back() / b.back();
        const std::size_t s = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= f * b[i];
        trim(a);
    }
    return a;
}

QPoly poly_div(QPoly a, const QPoly& b) {
    trim(a);
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (a.size() >= b.size()) {
        const mpq_class f = a.back() / b.back();
        const std::size_t s = a.size() - b.size();
        q[s] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= f * b[i];
        trim(a);
    }
    return q;
}

QPoly cyclotomic(long d) {
    QPoly p(static_cast<std::size_t>(d) + 1);
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;
    for (long e = 1; e < d; ++e)
        if (d % e == 0) p = poly_div(p, cyclotomic(e));
    return p;
}

/// Unit test in Q[Z/n]((t)): nonzero image in every factor Q(zeta_d)((t)).
bool cyclic_laurent_unit_oracle(const LaurentPolyGA& p) {
    if (p.is_zero()) return false;
    const long n = static_cast<long>(p.group()->order());
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const QPoly phi = cyclotomic(d);
        bool nonzero = false;
        for (const auto& [deg, c] : p.terms()) {
            QPoly q(static_cast<std::size_t>(n));
            for (const auto& [e, v] : c.terms()) q[e] += v;
            if (!poly_rem(q, phi).empty()) nonzero = true;
        }
        if (!nonzero) return false;
    }
    return true;
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "Upsilon of a + b tau + c tau^2 at N = 3") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_elem(rng, z44), b = random_elem(rng, z44), c = random_elem(rng, z44);
        auto s = NovikovSeries::polynomial(k3, 0, {a, b, c});
        auto u = upsilon_elem(s, 3);
        auto k = [&](int p, const GroupAlgebraElem& v) { return gr_apply_aut_power(*k3, v, p); };
        auto at = [&](const GroupAlgebraElem& v, long d) { return LaurentPolyGA::monomial(v, d); };
        UpsilonMatrix expected(z44, 3);
        expected(0, 0) = at(k(3, a), 0);
        expected(1, 1) = at(k(2, a), 0);
        expected(2, 2) = at(k(1, a), 0);
        expected(0, 2) += at(k(3, b), 1);
        expected(1, 0) += at(k(2, b), 1);
        expected(2, 1) += at(k(1, b), 1);
        expected(0, 1) += at(k(3, c), 2);
        expected(1, 2) += at(k(2, c), 2);
        expected(2, 0) += at(k(1, c), 2);
        REQUIRE(u == expected);
    }
}

TEST_CASE_FIXTURE(Fixture, "Upsilon of units and shifts") {
    for (long N : {1L, 2L, 4L}) {
        auto u = upsilon_elem(NovikovSeries::one(neg), N == 1 ? 2 : N);
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < u.size(); ++j) CHECK(u(i, j) == (i == j ? t(z5, 0) : LaurentPolyGA(z5)));
    }
    auto x_tau = NovikovSeries::monomial(neg, GroupAlgebraElem(z5, 1), 1);
    auto u = upsilon_elem(x_tau, 2);
    CHECK(u(0, 0).is_zero());
    CHECK(u(1, 1).is_zero());
    CHECK(u(1, 0) == LaurentPolyGA::monomial(GroupAlgebraElem(z5, 4), 1));
    CHECK(u(0, 1) == LaurentPolyGA::monomial(GroupAlgebraElem(z5, 1), 1));
    CHECK(u * u == upsilon_elem(x_tau * x_tau, 2));
    CHECK(upsilon_elem(x_tau * x_tau, 2) == upsilon_elem(NovikovSeries::monomial(neg, GroupAlgebraElem(z5, 0), 2), 2));

    auto up = upsilon_elem(NovikovSeries::monomial(neg, GroupAlgebraElem(z5, 0), 1), 2);
    auto down = upsilon_elem(NovikovSeries::monomial(neg, GroupAlgebraElem(z5, 0), -1), 2);
    CHECK(up * down == upsilon_elem(NovikovSeries::one(neg), 2));

    CHECK_THROWS_AS(upsilon_elem(NovikovSeries::big_o(neg, 3), 2), AlgebraError);
    CHECK_THROWS_AS(upsilon_elem(x_tau, 3), AlgebraError);
}

TEST_CASE_FIXTURE(Fixture, "Upsilon matrices") {
    NovikovMatrix m(id, 1);
    m(0, 0) = NovikovSeries::monomial(id, GroupAlgebraElem(trivial, 0), 1);
    auto u = upsilon_matrix(m, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(u(i, j) == (i == (j + 1) % 6 ? t(trivial, 1) : LaurentPolyGA(trivial)));

    auto ident = upsilon_matrix(identity_matrix(neg, 2), 2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(ident(i, j) == (i == j ? t(z5, 0) : LaurentPolyGA(z5)));

    auto f = builtin("4_1");
    auto r = metabelian_rep(f, 2);
    auto a = build_fox_matrix(f, r);
    auto ua = upsilon_matrix(a, 2);
    CHECK(ua.size() == 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            auto block = upsilon_elem(a(i, j), 2);
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q) CHECK(ua(2 * i + p, 2 * j + q) == block(p, q));
        }
}

TEST_CASE_FIXTURE(Fixture, "Upsilon is a ring homomorphism") {
    std::mt19937_64 rng(52);
    for (const auto& [kappa, N] : std::vector<std::pair<AutPtr, long>>{{neg, 2}, {neg, 4}, {k3, 3}, {k3, 6}}) {
        for (int trial = 0; trial < 125; ++trial) {
            auto f = random_poly(rng, kappa), g = random_poly(rng, kappa);
            REQUIRE(upsilon_elem(f * g, N) == upsilon_elem(f, N) * upsilon_elem(g, N));
            REQUIRE(upsilon_elem(f + g, N) == upsilon_elem(f, N) + upsilon_elem(g, N));
        }
    }
}

TEST_CASE_FIXTURE(Fixture, "determinant examples") {
    UpsilonMatrix ident(z5, 3);
    for (std::size_t i = 0; i < 3; ++i) ident(i, i) = t(z5, 0);
    CHECK(det_commutative(ident) == t(z5, 0));
    CHECK(det_commutative(UpsilonMatrix(z5, 0)) == t(z5, 0));

    auto p = t(z5, -1) + LaurentPolyGA::constant(GroupAlgebraElem(z5, 2, 3));
    auto q = t(z5, 2) - LaurentPolyGA::constant(GroupAlgebraElem(z5, 1));
    UpsilonMatrix d(z5, 2);
    d(0, 0) = p;
    d(1, 1) = q;
    CHECK(det_commutative(d) == p * q);

    UpsilonMatrix zero_row(z5, 2);
    zero_row(0, 0) = p;
    zero_row(0, 1) = q;
    CHECK(det_commutative(zero_row).is_zero());

    auto r = trivial_rep(1, 6);
    auto a = build_fox_matrix(builtin("3_1"), r);
    auto det = det_commutative(upsilon_matrix(a, 6));
    auto one_minus = t(trivial, 0) - t(trivial, 6);
    CHECK(poly_equiv(det, one_minus * one_minus));
    auto f = builtin("4_1");
    auto u = upsilon_matrix(build_fox_matrix(f, metabelian_rep(f, 2)), 2);
    CHECK(det_commutative(u) == leibniz_det(u));
}

TEST_CASE_FIXTURE(Fixture, "determinant against Leibniz, multiplicativity, row operations") {
    std::mt19937_64 rng(53);
    auto g = make_group({3});
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        auto a = random_matrix(rng, g, n), b = random_matrix(rng, g, n);
        const auto da = det_commutative(a);
        REQUIRE(da == leibniz_det(a));
        REQUIRE(det_commutative(a * b) == da * det_commutative(b));
        if (n >= 2) {
            auto c = a;
            auto f = random_matrix(rng, g, 1)(0, 0);
            for (std::size_t j = 0; j < n; ++j) c(1, j) += f * a(0, j);
            REQUIRE(det_commutative(c) == da);
            auto s = a;
            for (std::size_t j = 0; j < n; ++j) std::swap(s(0, j), s(1, j));
            REQUIRE(det_commutative(s) == -da);
        }
    }
}

TEST_CASE_FIXTURE(Fixture, "metafinite polynomials") {
    auto t3 = builtin("3_1");
    auto p6 = metafinite_polynomial(t3, trivial_rep(1, 6));
    auto one_minus = t(trivial, 0) - t(trivial, 6);
    CHECK(poly_equiv(p6, one_minus * one_minus));
    CHECK(p6 == t(trivial, -6) - t(trivial, 0, 2) + t(trivial, 6));
    CHECK(p6.to_string() == "t^-6 - 2 + t^6");

    auto f = builtin("4_1");
    auto r2 = metabelian_rep(f, 2);
    auto p2 = metafinite_polynomial(f, r2);
    GroupAlgebraElem mid(r2.group(), 0, -2);
    for (std::size_t h = 0; h < 5; ++h) mid -= GroupAlgebraElem(r2.group(), h);
    auto expected = t(r2.group(), -2) + LaurentPolyGA::constant(mid) + t(r2.group(), 2);
    CHECK(poly_equiv(p2, expected));
    CHECK(p2 == expected);
    CHECK(p2.to_string() == "t^-2 + (-3 - x - x^2 - x^3 - x^4) + t^2");

    // N = 3: augmentation is the trivial-rep determinant; the result is kappa-invariant
    auto r3 = metabelian_rep(f, 3);
    auto p3 = metafinite_polynomial(f, r3);
    CHECK(p3.apply_aut(*r3.kappa) == p3);
    LaurentPolyGA aug(trivial);
    for (const auto& [d, c] : p3.terms()) aug.add_term(d, GroupAlgebraElem(trivial, 0, c.augmentation()));
    auto triv = metafinite_polynomial(f, trivial_rep(1, 3));
    CHECK(aug == triv);
    CHECK(triv == t(trivial, -3) - t(trivial, 0, 18) + t(trivial, 3));
    auto a3 = build_fox_matrix(f, r3);
    CHECK(poly_equiv(p3, leibniz_det(upsilon_matrix(a3, 3))));
}

TEST_CASE_FIXTURE(Fixture, "canonical form") {
    auto p = t(z5, 3) + t(z5, 5, -2);
    auto c = canonical_form(p);
    CHECK(c.min_degree() == -1);
    CHECK(c.max_degree() == 1);
    auto odd = canonical_form(-(t(z5, 2) + t(z5, 5)));
    CHECK(odd.min_degree() == 0);
    CHECK(odd.terms().begin()->second.terms().front().second > 0);
    CHECK(canonical_form(LaurentPolyGA(z5)).is_zero());
}

TEST_CASE_FIXTURE(Fixture, "poly_equiv") {
    auto p = t(z5, -1) + LaurentPolyGA::constant(GroupAlgebraElem(z5, 2, 3)) + t(z5, 4);
    CHECK(poly_equiv(p, p));
    CHECK(poly_equiv(p, p.shift(3).times_group_element(1)));
    CHECK(poly_equiv(p, p.scaled(mpq_class(-2, 3)).times_group_element(4)));
    auto one_minus6 = t(trivial, 0) - t(trivial, 6);
    auto one_minus3 = t(trivial, 0) - t(trivial, 3);
    CHECK_FALSE(poly_equiv(one_minus6 * one_minus6, one_minus3 * one_minus3));
    CHECK_FALSE(poly_equiv(p, LaurentPolyGA(z5)));
    CHECK(poly_equiv(LaurentPolyGA(z5), LaurentPolyGA(z5)));
    CHECK_FALSE(poly_equiv(p, p + t(z5, 0)));
}

TEST_CASE_FIXTURE(Fixture, "is_unit_laurent examples") {
    CHECK(is_unit_laurent(t(z5, 3)));
    GroupAlgebraElem norm(z5);
    for (std::size_t h = 0; h < 5; ++h) norm += GroupAlgebraElem(z5, h);
    CHECK_FALSE(is_unit_laurent(LaurentPolyGA::constant(norm)));
    CHECK_FALSE(is_unit_laurent(LaurentPolyGA::constant(norm).shift(2) + LaurentPolyGA::constant(norm)));
    CHECK_FALSE(is_unit_laurent(LaurentPolyGA(z5)));
    auto f = builtin("4_1");
    auto r = metabelian_rep(f, 2);
    CHECK(is_unit_laurent(det_commutative(upsilon_matrix(build_fox_matrix(f, r), 2))));
    // (1 - x) + norm * t: neither coefficient is a unit, the sum is
    auto mixed = LaurentPolyGA::constant(GroupAlgebraElem::one(z5) - GroupAlgebraElem(z5, 1)) +
                 LaurentPolyGA::monomial(norm, 1);
    CHECK(is_unit_laurent(mixed));
}

TEST_CASE("is_unit_laurent agrees with the cyclotomic oracle") {
    std::mt19937_64 rng(54);
    int units = 0, non_units = 0;
    for (long n : {2L, 4L, 6L}) {
        auto g = make_group({n});
        for (int trial = 0; trial < 200; ++trial) {
            LaurentPolyGA p(g);
            std::uniform_int_distribution<long> deg(-2, 2);
            std::uniform_int_distribution<std::size_t> e(0, static_cast<std::size_t>(n) - 1);
            std::uniform_int_distribution<int> c(-1, 1);
            for (int k = 0; k < 3; ++k) {
                GroupAlgebraElem a(g);
                // sparse, structured coefficients so that zero divisors are common
                a += GroupAlgebraElem(g, 0, c(rng));
                a += GroupAlgebraElem(g, e(rng), c(rng));
                if (trial % 2 == 0) a = a * (GroupAlgebraElem::one(g) + GroupAlgebraElem(g, static_cast<std::size_t>(n / 2)));
                p.add_term(deg(rng), a);
            }
            const bool u = is_unit_laurent(p);
            REQUIRE(u == cyclic_laurent_unit_oracle(p));
            (u ? units : non_units)++;
        }
    }
    CHECK(units > 50);
    CHECK(non_units > 50);
}

TEST_CASE("metafinite polynomial is stable under conjugation and Nielsen moves") {
    std::mt19937_64 rng(55);
    for (const auto& [knot, N] : std::vector<std::pair<std::string, long>>{{"3_1", 6}, {"4_1", 2}, {"4_1", 3}, {"5_2", 3}}) {
        const auto base = builtin(knot);
        const auto r0 = metabelian_rep(base, N);
        const auto ref = metafinite_polynomial(base, r0);
        for (int trial = 0; trial < 20; ++trial) {
            const Word h = k1alex::testing::random_word(rng, 2, 6);
            REQUIRE(poly_equiv(metafinite_polynomial(conjugate_presentation(base, h), r0), ref));
            auto p = base;
            auto r = r0;
            for (int s = 0; s <= trial % 3; ++s) {
                const auto mv = k1alex::testing::random_move(rng);
                p = apply_nielsen(p, mv);
                r = transport_rep(r, mv);
            }
            REQUIRE(poly_equiv(metafinite_polynomial(p, r), ref));
        }
    }
}

TEST_CASE_FIXTURE(Fixture, "Laurent polynomial arithmetic and printing") {
    auto x = LaurentPolyGA::constant(GroupAlgebraElem(z5, 1));
    auto p = t(z5, -1) + x + t(z5, 1, -2);
    CHECK(p.to_string() == "t^-1 + x - 2*t");
    CHECK((p - p).is_zero());
    CHECK(p.coefficient(0) == GroupAlgebraElem(z5, 1));
    CHECK(p.coefficient(7).is_zero());
    CHECK((p * t(z5, 1)).min_degree() == 0);
    CHECK(p.apply_aut(*neg).coefficient(0) == GroupAlgebraElem(z5, 4));
    CHECK(LaurentPolyGA(z5).to_string() == "0");
    CHECK_THROWS_AS(LaurentPolyGA(z5).min_degree(), AlgebraError);
    CHECK_THROWS_AS(p + t(trivial, 0), AlgebraError);
}
