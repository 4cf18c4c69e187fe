#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace modres;
using namespace testutil;

TEST_CASE("module complex validation") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    GModule k = GModule::trivial(z4, f);
    GModule reg = GModule::regular(z4, f);

    // map of the wrong shape (augmentation stuffed into the k -> reg slot)
    Matrix eps(f, 1, 4);
    for (int i = 0; i < 4; ++i) eps.at(0, i) = 1;
    ModuleComplex backwards{{reg, k}, {Matrix(f, 0, 0), eps}};
    REQUIRE_THROWS_AS(backwards.check(), Error);

    // the transpose (norm map k -> reg) is a legitimate complex
    ModuleComplex norm_cx{{reg, k}, {Matrix(f, 0, 0), eps.transpose()}};
    norm_cx.check();

    ModuleComplex fine{{k, reg}, {Matrix(f, 0, 0), eps}};
    fine.check();

    // non-equivariant map
    Matrix notequi(f, 1, 4);
    notequi.at(0, 0) = 1;
    ModuleComplex broke{{k, reg}, {Matrix(f, 0, 0), notequi}};
    REQUIRE_THROWS_AS(broke.check(), Error);

    // composite not zero: k <- k <- k with identity maps
    Matrix id1 = Matrix::identity(f, 1);
    ModuleComplex notcx{{k, k, k}, {Matrix(f, 0, 0), id1, id1}};
    REQUIRE_THROWS_AS(notcx.check(), Error);
}

TEST_CASE("same_module distinguishes representations") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    REQUIRE(same_module(GModule::trivial(z4, f), GModule::trivial(z4, f)));
    REQUIRE(!same_module(GModule::trivial(z4, f), GModule::regular(z4, f)));
    REQUIRE(!same_module(GModule::trivial(z4, f), GModule::trivial(z4, PrimeField(3))));
    REQUIRE(!same_module(GModule::trivial(z4, f), GModule::trivial(Group::cyclic(2), f)));
}

TEST_CASE("wall totalization of a two-term complex with zero map") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    GModule k = GModule::trivial(z4, f);
    ModuleComplex c{{k, k}, {Matrix(f, 0, 0), Matrix(f, 1, 1)}};
    c.check();
    FreeResolution rk = materialize(resolve(k, 4));
    WallResult w = wall_totalize(c, {rk, rk}, 4);
    REQUIRE(verify_wall(w, c).empty());
    REQUIRE(w.d_squared_zero);
    REQUIRE(w.homology_match);
    // with a zero connecting map the total ranks are just the sums
    for (int n = 0; n <= 4; ++n)
        REQUIRE(w.total_ranks[n] == rk.ranks[n] + (n >= 1 ? rk.ranks[n - 1] : 0));
}

TEST_CASE("wall rejects mismatched or short columns") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    GModule k = GModule::trivial(z4, f);
    ModuleComplex c{{k, k}, {Matrix(f, 0, 0), Matrix(f, 1, 1)}};
    FreeResolution rk = materialize(resolve(k, 4));
    FreeResolution wrong = materialize(resolve(GModule::trivial(z4, f, 2), 4));
    REQUIRE_THROWS_AS(wall_totalize(c, {rk, wrong}, 3), Error);
    REQUIRE_THROWS_AS(wall_totalize(c, {rk, rk}, 5), Error);      // columns too short
    REQUIRE_THROWS_AS(wall_totalize(c, {rk}, 3), Error);          // one column missing
}

TEST_CASE("randomized wall instances totalize exactly") {
    std::mt19937_64 rng(31);
    struct Pool { Group g; uint32_t p; };
    std::vector<Pool> pool = {{Group::cyclic(4), 2},
                              {Group::elementary_abelian(2, 2), 2},
                              {Group::quaternion8(), 2},
                              {Group::cyclic(9), 3}};
    for (int trial = 0; trial < 6; ++trial) {
        const Pool& pick = pool[trial % pool.size()];
        int nterms = 2 + (int)rand_below(rng, 2);
        int total_len = 3;
        ComplexInstance inst =
            random_complex(rng, pick.g, PrimeField(pick.p), nterms, 8, total_len, true);
        WallResult w = wall_totalize(inst.c, inst.cols, total_len);
        std::string err = verify_wall(w, inst.c);
        INFO("trial " << trial << ": " << err);
        REQUIRE(err.empty());
    }
    // and one generic-resolution instance over a non-p-group
    ComplexInstance inst = random_complex(rng, Group::cyclic(6), PrimeField(2), 2, 3, 2, false);
    WallResult w = wall_totalize(inst.c, inst.cols, 2);
    REQUIRE(verify_wall(w, inst.c).empty());
}

TEST_CASE("horseshoe ranks are pointwise sums") {
    std::mt19937_64 rng(32);
    std::vector<Group> pool = {Group::cyclic(4), Group::elementary_abelian(2, 2),
                               Group::dihedral(4)};
    for (int trial = 0; trial < 4; ++trial) {
        const Group& g = pool[trial % pool.size()];
        PrimeField f(2);
        GModule w = random_small_module(rng, g, f, 8, 2);
        ShortExactSequence ses = random_ses(rng, w);
        int len = 4;
        FreeResolution p1 = materialize(resolve(ses.m1, len));
        FreeResolution p3 = materialize(resolve(ses.m3, len));
        FreeResolution out = horseshoe(ses, p1, p3, len);
        for (int n = 0; n <= len; ++n) REQUIRE(out.ranks[n] == p1.ranks[n] + p3.ranks[n]);
        out.verify_exact();
        out.verify_equivariant();
        REQUIRE(same_module(out.module, ses.m2));
    }
}

TEST_CASE("resolve_quotient ranks interleave the inputs") {
    std::mt19937_64 rng(33);
    Group g = Group::elementary_abelian(2, 2);
    PrimeField f(2);
    for (int trial = 0; trial < 3; ++trial) {
        GModule w = random_small_module(rng, g, f, 6, 2);
        ShortExactSequence ses = random_ses(rng, w);
        int len = 4;
        FreeResolution p1 = materialize(resolve(ses.m1, len));
        FreeResolution p2 = materialize(resolve(ses.m2, len));
        FreeResolution out = resolve_quotient(ses, p1, p2, len);
        for (int n = 0; n <= len; ++n)
            REQUIRE(out.ranks[n] == p2.ranks[n] + (n >= 1 ? p1.ranks[n - 1] : 0));
        out.verify_exact();
        out.verify_equivariant();
        REQUIRE(same_module(out.module, ses.m3));
    }
}

TEST_CASE("resolve_sub recovers the augmentation ideal of kZ_4") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    GModule reg = GModule::regular(z4, f);
    GModule k = GModule::trivial(z4, f);
    Matrix eps(f, 1, 4);
    for (int i = 0; i < 4; ++i) eps.at(0, i) = 1;
    auto kb = kernel_basis_full(eps);
    GModule rad = submodule_as_gmodule(reg, kb.basis, kb.free_cols);
    ShortExactSequence ses{rad, reg, k, kb.basis, eps};
    ses.check();

    int len = 5;
    FreeResolution p2 = materialize(resolve(reg, len));
    FreeResolution p3 = materialize(resolve(k, len + 1));
    FreeResolution out = resolve_sub(ses, p2, p3, len);
    REQUIRE(out.ranks == std::vector<int>{1, 1, 1, 1, 1, 1});
    out.verify_exact();
    out.verify_equivariant();
    REQUIRE(same_module(out.module, rad));
}

TEST_CASE("resolve_sub general branch over a non-p-group") {
    std::mt19937_64 rng(34);
    Group z6 = Group::cyclic(6);
    PrimeField f(2);
    GModule w = permutation_module(Subgroup(z6, {0, 3}), f);  // dim 3
    ShortExactSequence ses = random_ses(rng, w);
    int len = 2;
    FreeResolution p2 = materialize(resolve(ses.m2, len + 1, false));
    FreeResolution p3 = materialize(resolve(ses.m3, len + 1, false));
    FreeResolution out = resolve_sub(ses, p2, p3, len);
    out.verify_exact();
    out.verify_equivariant();
    REQUIRE(same_module(out.module, ses.m1));
}

TEST_CASE("two_of_three dispatches on the missing slot") {
    std::mt19937_64 rng(35);
    Group g = Group::cyclic(4);
    PrimeField f(2);
    GModule w = random_small_module(rng, g, f, 6, 2);
    ShortExactSequence ses = random_ses(rng, w);
    int len = 3;
    FreeResolution p1 = materialize(resolve(ses.m1, len + 1));
    FreeResolution p2 = materialize(resolve(ses.m2, len + 1));
    FreeResolution p3 = materialize(resolve(ses.m3, len + 1));

    FreeResolution mid = two_of_three(ses, SesSlot::M2, p1, p3, len);
    REQUIRE(same_module(mid.module, ses.m2));
    mid.verify_exact();
    FreeResolution quo = two_of_three(ses, SesSlot::M3, p1, p2, len);
    REQUIRE(same_module(quo.module, ses.m3));
    quo.verify_exact();
    FreeResolution sub = two_of_three(ses, SesSlot::M1, p2, p3, len);
    REQUIRE(same_module(sub.module, ses.m1));
    sub.verify_exact();
}
