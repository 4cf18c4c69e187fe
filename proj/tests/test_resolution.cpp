#include <catch2/catch_amalgamated.hpp>

#include "modres/resolution.hpp"

using namespace modres;

namespace {
long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}
}  // namespace

TEST_CASE("minimal ranks over elementary abelian groups follow the binomial law") {
    // dim_k Tor_n over k[(Z_p)^r] in characteristic p is C(n+r-1, r-1),
    // independent of p: the Koszul-style count one gets by hand
    for (uint32_t p : {2u, 3u}) {
        for (int r = 1; r <= 2; ++r) {
            Group g = Group::elementary_abelian((int)p, r);
            Resolution res = resolve(GModule::trivial(g, PrimeField(p)), 6);
            for (int n = 0; n <= 6; ++n)
                REQUIRE((long long)res.ranks[n] == binomial(n + r - 1, r - 1));
        }
    }
}

TEST_CASE("quaternion ranks are periodic with period 4") {
    Resolution res = resolve(GModule::trivial(Group::quaternion8(), PrimeField(2)), 9);
    std::vector<int> expect = {1, 2, 2, 1, 1, 2, 2, 1, 1, 2};
    REQUIRE(res.ranks == expect);
}

TEST_CASE("dihedral and Z_2xZ_4 ranks grow linearly as n+1") {
    for (const Group& g : {Group::dihedral(4),
                           Group::direct_product(Group::cyclic(2), Group::cyclic(4))}) {
        Resolution res = resolve(GModule::trivial(g, PrimeField(2)), 7);
        for (int n = 0; n <= 7; ++n) REQUIRE(res.ranks[n] == n + 1);
    }
}

TEST_CASE("materialized minimal resolutions are exact and equivariant") {
    Group g = Group::elementary_abelian(2, 2);
    FreeResolution fr = materialize(resolve(GModule::trivial(g, PrimeField(2)), 5));
    fr.verify_exact();
    fr.verify_equivariant();
    // minimality: differentials have no unit entries in generator columns
    // (all entries of d_n lie in the radical), checked via aug * d_1 = 0
    REQUIRE((fr.aug * fr.d[1]).is_zero());
}

TEST_CASE("generic resolutions work over non-p-groups") {
    Group z6 = Group::cyclic(6);
    PrimeField f(2);
    GModule k = GModule::trivial(z6, f);
    REQUIRE_THROWS_AS(resolve(k, 2, true), Error);
    FreeResolution fr = materialize(resolve(k, 2, false));
    fr.verify_exact();
    fr.verify_equivariant();
}

TEST_CASE("resolution of a free module stops immediately in minimal mode") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    GModule free2 = FreeModule(z4, f, 2).materialize();
    Resolution res = resolve(free2, 3);
    REQUIRE(res.ranks == std::vector<int>{2, 0, 0, 0});
}

TEST_CASE("lazy differentials agree with the materialized ones") {
    Group g = Group::dihedral(4);
    Resolution res = resolve(GModule::trivial(g, PrimeField(2)), 4);
    FreeResolution fr = materialize(res);
    for (int n = 1; n <= 4; ++n) REQUIRE(res.differential(n) == fr.d[n]);
    REQUIRE(res.term(2).rank == res.ranks[2]);
}

TEST_CASE("check_growth certifies the least constant for polynomial families") {
    std::vector<int> linear = {1, 2, 3, 4, 5, 6};
    GrowthVerdict v = check_growth(linear, ComplexityFunction::polynomial(1));
    REQUIRE(v.holds);
    REQUIRE(v.kind == GrowthVerdict::Kind::BoundedByF);
    REQUIRE(v.witness == Fraction(1, 1));

    // ranks 2(n+1) against (n+1)^2: the max ratio is at n=0
    std::vector<int> twice = {2, 4, 6, 8};
    GrowthVerdict v2 = check_growth(twice, ComplexityFunction::polynomial(2));
    REQUIRE(v2.witness == Fraction(2, 1));

    // with an explicit cap the verdict can fail
    GrowthVerdict bad = check_growth({1, 2, 4, 8, 16}, ComplexityFunction::polynomial(1),
                                     Fraction(2, 1));
    REQUIRE(!bad.holds);
    REQUIRE(bad.witness == Fraction(2, 1));
    GrowthVerdict good = check_growth({1, 2, 4}, ComplexityFunction::polynomial(1), Fraction(2, 1));
    REQUIRE(good.holds);
}

TEST_CASE("check_growth transcendental families round the ratio up") {
    GrowthVerdict v = check_growth({1, 1, 1}, ComplexityFunction::exponential());
    REQUIRE(v.holds);
    REQUIRE(Fraction(1, 1) <= v.witness);
    GrowthVerdict lg = check_growth({3, 3}, ComplexityFunction::log_shift(),
                                    Fraction(1, 1));
    REQUIRE(!lg.holds);  // 3/log(2) > 1
}

TEST_CASE("check_finite_length") {
    GrowthVerdict v = check_finite_length({1, 2, 1, 0, 0});
    REQUIRE(v.holds);
    REQUIRE(v.kind == GrowthVerdict::Kind::FiniteLength);
    REQUIRE(v.witness == Fraction(2, 1));

    GrowthVerdict w = check_finite_length({1, 1, 1});
    REQUIRE(!w.holds);
    REQUIRE(w.witness == Fraction(2, 1));  // last nonzero degree
}

TEST_CASE("fitted_degree reads off polynomial growth exactly") {
    std::vector<int> constant = {1, 1, 1, 1, 1};
    REQUIRE(fitted_degree(constant) == 0);
    std::vector<int> linear = {1, 2, 3, 4, 5, 6, 7};
    REQUIRE(fitted_degree(linear) == 1);
    std::vector<int> quad;
    for (int n = 0; n < 9; ++n) quad.push_back((int)binomial(n + 2, 2));
    REQUIRE(fitted_degree(quad) == 2);
    // period 4, bounded: degree 0
    std::vector<int> periodic = {1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1};
    REQUIRE(fitted_degree(periodic) == 0);
    // genuinely unstable data is refused, not guessed
    std::vector<int> expo = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048};
    REQUIRE_THROWS_AS(fitted_degree(expo, 3), Error);
    REQUIRE_THROWS_AS(fitted_degree({1, 2}), Error);
}

TEST_CASE("induced resolutions stay exact") {
    Group z4 = Group::cyclic(4);
    Subgroup h(z4, {0, 2});
    PrimeField f(2);
    Group hg = h.to_group().group;
    FreeResolution sub = materialize(resolve(GModule::trivial(hg, f), 4));
    FreeResolution ind = induce_resolution(h, sub);
    REQUIRE(ind.ranks == sub.ranks);
    REQUIRE(ind.module.dim() == 2);
    ind.verify_exact();
    ind.verify_equivariant();
}

TEST_CASE("homology dimensions of a known complex") {
    PrimeField f(2);
    // complex k <- k^2 with d = [1 0]: H_0 = 1 - 1 = 0, H_1 = 2 - 1 = 1
    Matrix d1(f, 1, 2);
    d1.at(0, 0) = 1;
    std::vector<int> h = homology_dims({1, 2}, {Matrix(f, 0, 0), d1});
    REQUIRE(h == std::vector<int>{0, 1});
    // zero map: homology is everything
    std::vector<int> h2 = homology_dims({3, 2}, {Matrix(f, 0, 0), Matrix(f, 3, 2)});
    REQUIRE(h2 == std::vector<int>{3, 2});
}

TEST_CASE("complexity function formatting and evaluation") {
    REQUIRE(ComplexityFunction::polynomial(2).str() == "(n+1)^2");
    REQUIRE(ComplexityFunction::log_shift().str() == "log(n+2)");
    REQUIRE(ComplexityFunction::exponential().str() == "exp(n)");
    REQUIRE(ComplexityFunction::polynomial(3).eval(1) == 8.0L);
    REQUIRE(ComplexityFunction::polynomial(3).eval(3) == 64.0L);
    REQUIRE_THROWS_AS(ComplexityFunction::polynomial(-1), Error);
}
