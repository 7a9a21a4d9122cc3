#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k1alex/novikov.hpp"
#include "log_oracle.hpp"
#include "support.hpp"

using namespace k1alex;
using k1alex::testing::random_elem;
using k1alex::testing::random_series;
using k1alex::testing::random_unit_monomial;
using k1alex::testing::random_witt;

namespace {

struct Fixture {
    GroupPtr z5 = make_group({5});
    AutPtr neg = std::make_shared<const GroupAut>(z5, std::vector<std::vector<long>>{{-1}});
    GroupPtr z44 = make_group({4, 4});
    AutPtr k3 = std::make_shared<const GroupAut>(z44, std::vector<std::vector<long>>{{2, -1}, {-1, 1}});
    GroupPtr trivial = make_group({});
    AutPtr id = std::make_shared<const GroupAut>(GroupAut::identity(trivial));

    GroupAlgebraElem e(long k) const { return GroupAlgebraElem(z5, static_cast<std::size_t>(((k % 5) + 5) % 5)); }
    NovikovSeries tau(const AutPtr& a, long d = 1) const {
        return NovikovSeries::monomial(a, GroupAlgebraElem::one(a->group()), d);
    }
    NovikovSeries q(long v) const { return NovikovSeries::monomial(id, GroupAlgebraElem(trivial, 0, v), 0); }
};

/// Reference skew product by direct double sum over exact polynomials.
NovikovSeries naive_product(const NovikovSeries& a, const NovikovSeries& b) {
    const auto& kappa = *a.kappa();
    std::map<long, GroupAlgebraElem> acc;
    for (long i = a.valuation(); i <= a.max_degree(); ++i)
        for (long j = b.valuation(); j <= b.max_degree(); ++j) {
            auto c = a.coefficient(i) * gr_apply_aut_power(kappa, b.coefficient(j), i);
            auto [it, fresh] = acc.try_emplace(i + j, c);
            if (!fresh) it->second += c;
        }
    const long lo = acc.begin()->first;
    std::vector<GroupAlgebraElem> coeffs;
    for (long k = lo; k <= acc.rbegin()->first; ++k) coeffs.push_back(acc.at(k));
    return NovikovSeries::polynomial(a.kappa(), lo, coeffs);
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "twisted multiplication examples") {
    auto x = NovikovSeries::monomial(neg, e(1), 0);
    CHECK((tau(neg) * x).identical(NovikovSeries::monomial(neg, e(4), 1)));
    auto one_minus = NovikovSeries::one(neg) - tau(neg);
    auto geometric = NovikovSeries::truncated(neg, 0, std::vector<GroupAlgebraElem>(24, e(0)), 24);
    auto prod = one_minus * geometric;
    CHECK(prod == NovikovSeries::one(neg));
    CHECK(prod.precision() == 24);
    CHECK(((tau(neg, -1) + NovikovSeries::one(neg)) * tau(neg)).identical(NovikovSeries::one(neg) + tau(neg)));
    CHECK_THROWS_AS(tau(neg) * tau(k3), AlgebraError);
}

TEST_CASE_FIXTURE(Fixture, "series bookkeeping") {
    auto s = NovikovSeries::truncated(neg, -1, {GroupAlgebraElem(z5), e(1), e(2)}, 3);
    CHECK(s.valuation() == 0);
    CHECK(s.window() == 3);
    CHECK(s.coefficient(1) == e(2));
    CHECK(s.coefficient(2).is_zero());
    CHECK_THROWS_AS(s.coefficient(3), AlgebraError);
    CHECK(NovikovSeries::big_o(neg, 4).is_zero());
    CHECK(NovikovSeries::big_o(neg, 4).valuation() == 4);
    CHECK(NovikovSeries::zero(neg).is_exact());
    CHECK(NovikovSeries::big_o(neg, 4) == NovikovSeries::zero(neg));
    CHECK_FALSE(NovikovSeries::big_o(neg, 4).identical(NovikovSeries::zero(neg)));
    CHECK((tau(neg, 2) + NovikovSeries::big_o(neg, 2)).is_zero());
    CHECK(tau(neg, -1).to_string() == "tau^-1");
    auto d = tau(neg, -1) - NovikovSeries::monomial(neg, e(0) + e(1) + e(4), 0) + NovikovSeries::monomial(neg, e(1), 1);
    CHECK(d.to_string() == "tau^-1 + (-1 - x - x^4) + x*tau");
    CHECK(s.to_string() == "x + x^2*tau + O(tau^3)");
    CHECK(NovikovSeries::zero(neg).to_string() == "0");
    CHECK(NovikovSeries::big_o(neg, 0).to_string() == "O(1)");
    CHECK(tau(neg).shift(2).identical(tau(neg, 3)));
    CHECK(NovikovSeries::monomial(neg, e(1), 0).shift(1).identical(NovikovSeries::monomial(neg, e(4), 1)));
}

TEST_CASE_FIXTURE(Fixture, "inversion examples") {
    CHECK(ns_invert(tau(neg)).identical(tau(neg, -1)));
    auto inv = ns_invert(NovikovSeries::one(neg) - tau(neg), 10);
    CHECK(inv == NovikovSeries::truncated(neg, 0, std::vector<GroupAlgebraElem>(10, e(0)), 10));
    auto a = NovikovSeries::polynomial(neg, 0, {e(1), e(3)});  // x (1 + x^2 tau)
    auto b = ns_invert(a, 16);
    CHECK(a * b == NovikovSeries::one(neg));
    CHECK(b * a == NovikovSeries::one(neg));
    CHECK((a * b).precision() == 16);
    GroupAlgebraElem norm(z5);
    for (long k = 0; k < 5; ++k) norm += e(k);
    CHECK_THROWS_WITH_AS(ns_invert(NovikovSeries::monomial(neg, norm, 0)), "no leading-unit inverse", AlgebraError);
    CHECK_THROWS_AS(ns_invert(NovikovSeries::zero(neg)), AlgebraError);
}

TEST_CASE_FIXTURE(Fixture, "Witt normalization examples") {
    auto w = q(1) - tau(id) + tau(id, 2);
    auto n = witt_normalize(w);
    CHECK(n.unit.is_one());
    CHECK(n.degree == 0);
    CHECK(n.witt.identical(w));

    auto minus_x = -e(1);
    auto s = NovikovSeries::monomial(neg, minus_x, 1) * (NovikovSeries::one(neg) + tau(neg));
    auto ns = witt_normalize(s);
    CHECK(ns.unit == minus_x);
    CHECK(ns.degree == 1);
    CHECK(ns.witt.identical(NovikovSeries::one(neg) + tau(neg)));

    auto delta = tau(neg, -1) - NovikovSeries::monomial(neg, e(0) + e(1) + e(4), 0) +
                 NovikovSeries::monomial(neg, e(1), 1);
    auto nd = witt_normalize(delta);
    CHECK(nd.degree == -1);
    CHECK(nd.witt.valuation() == 0);
    CHECK(nd.witt.leading_coefficient().is_one());
    CHECK((NovikovSeries::monomial(neg, nd.unit, nd.degree) * nd.witt).identical(delta));
}

TEST_CASE_FIXTURE(Fixture, "log of the identity vanishes") {
    auto logs = ns_log(NovikovSeries::one(neg), 12);
    CHECK(logs.period == 2);
    CHECK(logs.entries.size() == 6);
    for (const auto& [k, c] : logs.entries) {
        CHECK(k % 2 == 0);
        CHECK(c.is_zero());
    }
    CHECK_THROWS_AS(ns_log(tau(neg)), AlgebraError);
    CHECK_THROWS_AS(logs.at(3), AlgebraError);
}

TEST_CASE_FIXTURE(Fixture, "trefoil log against log(1 + tau^3) - log(1 + tau)") {
    auto w = q(1) - tau(id) + tau(id, 2);
    auto logs = ns_log(w, 24);
    REQUIRE(logs.entries.size() == 24);
    for (long k = 1; k <= 24; ++k) {
        mpq_class expected(k % 2 == 1 ? 1 : -1, k);  // -(-1)^(k-1)/k
        expected = -expected;
        if (k % 3 == 0) {
            mpq_class c(((k / 3) % 2 == 1) ? 1 : -1, k / 3);
            c.canonicalize();
            expected += c;
        }
        expected.canonicalize();
        CHECK(logs.at(k).total(0) == expected);
    }
    for (long n = 1; n <= 4; ++n) CHECK(logs.at(6 * n).total(0) == mpq_class(-1, 3 * n));
}

TEST_CASE_FIXTURE(Fixture, "figure-eight N = 2 log through the determinant route") {
    // Witt part of tau * Delta for Delta = tau^-1 - (1 + x + x^4) + x tau
    auto c = e(0) + e(1) + e(4);
    auto w = NovikovSeries::polynomial(neg, 0, {e(0), -gr_apply_aut(*neg, c), gr_apply_aut(*neg, e(1))});
    auto logs = ns_log(w, 12);

    auto ups = upsilon_elem(w, 2);
    auto oracle = k1alex::testing::commutative_log(k1alex::testing::leibniz_det(ups), 12);
    for (long k = 1; k <= 12; ++k) {
        if (k % 2 == 1) {
            CHECK(oracle.at(k).is_zero());
            continue;
        }
        CHECK(k1alex::testing::orbit_trace(logs.at(k), *neg, 2) == oracle.at(k));
    }

    // frozen from the route above; the augmentation 1 - 3 tau + tau^2 has log coefficients -L_2k/k (Lucas)
    CHECK(logs.at(2).total(0) == mpq_class(-3, 2));
    CHECK(logs.at(2).total(1) == -1);
    CHECK(logs.at(2).total(2) == -1);
    CHECK(logs.at(4).total(0) == mpq_class(-11, 4));
    CHECK(logs.at(4).total(1) == mpq_class(-9, 2));
    CHECK(logs.at(4).total(2) == mpq_class(-9, 2));
    CHECK(logs.at(6).total(0) == -11);
    CHECK(logs.at(6).total(1) == mpq_class(-64, 3));
    CHECK(logs.at(6).total(2) == mpq_class(-64, 3));
    std::vector<mpz_class> lucas{2, 1};
    while (lucas.size() <= 24) lucas.push_back(lucas[lucas.size() - 1] + lucas[lucas.size() - 2]);
    for (long k = 2; k <= 12; k += 2) {
        mpq_class aug = 0;
        for (const auto& [rep, total] : logs.at(k).totals()) aug += total;
        mpq_class expected(-lucas[2 * k], k);
        expected.canonicalize();
        CHECK(aug == expected);
    }
}

TEST_CASE_FIXTURE(Fixture, "multiplication agrees with the naive double sum") {
    std::mt19937_64 rng(21);
    for (const auto& kappa : {neg, k3}) {
        for (int trial = 0; trial < 250; ++trial) {
            auto a = random_series(rng, kappa, false), b = random_series(rng, kappa, false);
            if (a.is_zero() || b.is_zero()) continue;
            REQUIRE((a * b).identical(naive_product(a, b)));
        }
    }
}

TEST_CASE_FIXTURE(Fixture, "ring axioms on truncated series") {
    std::mt19937_64 rng(22);
    for (const auto& kappa : {neg, k3}) {
        for (int trial = 0; trial < 250; ++trial) {
            auto a = random_series(rng, kappa, true), b = random_series(rng, kappa, true),
                 c = random_series(rng, kappa, true);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE((a + b) * c == a * c + b * c);
            REQUIRE(a + b == b + a);
            REQUIRE(a * NovikovSeries::one(kappa) == a);
            REQUIRE((a - a).is_zero());
        }
    }
}

TEST_CASE_FIXTURE(Fixture, "inverse on random leading-unit series") {
    std::mt19937_64 rng(23);
    for (const auto& kappa : {neg, k3}) {
        for (int trial = 0; trial < 250; ++trial) {
            auto a = random_series(rng, kappa, false, true);
            auto b = ns_invert(a, 12);
            REQUIRE(a * b == NovikovSeries::one(kappa));
            REQUIRE(b * a == NovikovSeries::one(kappa));
            auto n = witt_normalize(a);
            REQUIRE((NovikovSeries::monomial(kappa, n.unit, n.degree) * n.witt) == a);
        }
    }
}

TEST_CASE_FIXTURE(Fixture, "log is additive on Witt vectors") {
    std::mt19937_64 rng(24);
    for (const auto& kappa : {neg, k3}) {
        for (int trial = 0; trial < 250; ++trial) {
            auto u = random_witt(rng, kappa), v = random_witt(rng, kappa);
            auto lu = ns_log(u, 9), lv = ns_log(v, 9), luv = ns_log(u * v, 9);
            REQUIRE(luv.entries.size() == lu.entries.size());
            for (const auto& [k, c] : luv.entries) REQUIRE(c == lu.at(k) + lv.at(k));
        }
    }
}
