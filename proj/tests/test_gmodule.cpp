#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "modres/sampling.hpp"

using namespace modres;

TEST_CASE("module validation") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    // rho(1)^2 = I but the table says rho(2) = swap, so it is not multiplicative
    Matrix swap2(f, 2, 2);
    swap2.at(0, 1) = 1;
    swap2.at(1, 0) = 1;
    std::vector<Matrix> bad = {Matrix::identity(f, 2), swap2, swap2, Matrix::identity(f, 2)};
    REQUIRE_THROWS_AS(GModule(z4, f, bad, true), Error);
    // same table over Klein is a fine representation
    GModule ok(Group::elementary_abelian(2, 2), f, bad, true);
    REQUIRE(ok.dim() == 2);
}

TEST_CASE("trivial and regular modules") {
    Group g = Group::symmetric3();
    PrimeField f(3);
    GModule k = GModule::trivial(g, f);
    REQUIRE(k.dim() == 1);
    for (int x = 0; x < 6; ++x) REQUIRE(k.action(x) == Matrix::identity(f, 1));

    GModule reg = GModule::regular(g, f);
    reg.check();
    REQUIRE(reg.dim() == 6);
    // permutation matrices: every column has a single 1
    for (int x = 0; x < 6; ++x) {
        for (int c = 0; c < 6; ++c) {
            int ones = 0;
            for (int r = 0; r < 6; ++r) ones += reg.action(x).at(r, c) ? 1 : 0;
            REQUIRE(ones == 1);
        }
    }
}

TEST_CASE("free modules act by permuting coordinates") {
    Group q8 = Group::quaternion8();
    PrimeField f(2);
    FreeModule fm(q8, f, 2);
    REQUIRE(fm.dim() == 16);
    GModule mat = fm.materialize();
    mat.check();
    std::mt19937_64 rng(21);
    Matrix v = random_matrix(rng, f, fm.dim(), 3);
    for (int x = 0; x < 8; ++x) REQUIRE(fm.act(x, v) == mat.action(x) * v);
}

TEST_CASE("extend_free produces equivariant maps") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    FreeModule src(z4, f, 1), tgt(z4, f, 2);
    std::mt19937_64 rng(22);
    Matrix gi = random_matrix(rng, f, tgt.dim(), 1);
    Matrix x = extend_free(src, tgt, gi);
    REQUIRE(is_equivariant(src.materialize(), tgt.materialize(), x));
    // the generator column is reproduced
    for (int r = 0; r < tgt.dim(); ++r)
        REQUIRE(x.at(r, src.index(0, z4.identity())) == gi.at(r, 0));
}

TEST_CASE("from_generator_action expands words and catches non-generation") {
    Group klein = Group::elementary_abelian(2, 2);
    PrimeField f(2);
    Matrix a(f, 2, 2), b(f, 2, 2);
    a.at(0, 0) = 1; a.at(1, 1) = 1; a.at(0, 1) = 1;  // unipotent
    b.at(0, 0) = 1; b.at(1, 1) = 1;
    std::map<int, Matrix> ga;
    REQUIRE(klein.generators().size() == 2);
    ga.emplace(klein.generators()[0], a);
    ga.emplace(klein.generators()[1], b);
    GModule m = GModule::from_generator_action(klein, f, ga);
    REQUIRE(m.dim() == 2);
    m.check();

    std::map<int, Matrix> partial;
    partial.emplace(klein.generators()[0], a);
    REQUIRE_THROWS_AS(GModule::from_generator_action(klein, f, partial), Error);
}

TEST_CASE("restriction and induction dimensions") {
    Group z6 = Group::cyclic(6);
    Subgroup z3(z6, {0, 2, 4});
    PrimeField f(2);
    GModule m = GModule::regular(z6, f);
    GModule r = restrict_module(m, z3);
    REQUIRE(r.dim() == 6);
    REQUIRE(r.group().order() == 3);

    GModule w = GModule::trivial(z3.to_group().group, f);
    GModule ind = induce_module(z3, w);
    ind.check();
    REQUIRE(ind.dim() == 2);  // index 2
}

TEST_CASE("induction of the subgroup regular module is the big regular module") {
    Group s3 = Group::symmetric3();
    Subgroup a3 = sylow_subgroup(s3, 3);
    PrimeField f(3);
    GModule ind = induce_module(a3, GModule::regular(a3.to_group().group, f));
    ind.check();
    REQUIRE(ind.dim() == 6);
    // free of rank 1: projective with an explicit splitting
    auto pr = is_projective(ind);
    REQUIRE(pr.projective);
}

TEST_CASE("induction unshuffle is the right permutation") {
    Group z4 = Group::cyclic(4);
    Subgroup h(z4, {0, 2});
    PrimeField f(3);
    Group hg = h.to_group().group;
    std::mt19937_64 rng(23);
    GModule a = random_submodule(rng, GModule::regular(hg, f));
    GModule b = GModule::trivial(hg, f, 2);
    Matrix u = induction_unshuffle(f, 2, a.dim(), b.dim());
    REQUIRE(u * u.transpose() == Matrix::identity(f, u.rows()));
    GModule lhs = induce_module(h, a.direct_sum(b));
    GModule rhs = induce_module(h, a).direct_sum(induce_module(h, b));
    for (int x = 0; x < 4; ++x) REQUIRE(u * lhs.action(x) == rhs.action(x) * u);
}

TEST_CASE("tensor product of modules") {
    Group klein = Group::elementary_abelian(2, 2);
    PrimeField f(2);
    GModule reg = GModule::regular(klein, f);
    GModule t = tensor_modules(reg, GModule::trivial(klein, f, 3));
    t.check();
    REQUIRE(t.dim() == 12);
    // k tensor M = M
    GModule back = tensor_modules(GModule::trivial(klein, f), reg);
    for (int x = 0; x < 4; ++x) REQUIRE(back.action(x) == reg.action(x));
}

TEST_CASE("hom spaces") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    GModule k = GModule::trivial(z4, f);
    REQUIRE(hom_space(k, k).cols() == 1);
    GModule reg = GModule::regular(z4, f);
    // Hom(kG, M) = M as vector spaces
    REQUIRE(hom_space(reg, k).cols() == 1);
    REQUIRE(hom_space(k, reg).cols() == 1);  // socle of kZ_4 is 1-dimensional
    REQUIRE(hom_space(reg, reg).cols() == 4);
    // every basis column really is equivariant
    Matrix basis = hom_space(reg, reg);
    for (int j = 0; j < basis.cols(); ++j) {
        std::vector<uint32_t> flat(basis.rows());
        for (int i = 0; i < basis.rows(); ++i) flat[i] = basis.at(i, j);
        REQUIRE(is_equivariant(reg, reg, unvec_rowmajor(flat, f, 4, 4)));
    }
}

TEST_CASE("counit map is the equivariant surjection onto the module") {
    Group d8 = Group::dihedral(4);
    PrimeField f(2);
    std::mt19937_64 rng(24);
    GModule m = random_permutation_module(rng, d8, f);
    Matrix c = counit_map(m);
    REQUIRE(c.rows() == m.dim());
    REQUIRE(c.cols() == m.dim() * 8);
    REQUIRE(rank(c) == m.dim());
    REQUIRE(is_equivariant(FreeModule(d8, f, m.dim()).materialize(), m, c));
}

TEST_CASE("projectivity detection with certificates") {
    PrimeField f2(2);

    // free modules are projective, and the splitting is exact
    Group q8 = Group::quaternion8();
    GModule free1 = FreeModule(q8, f2, 1).materialize();
    auto pr = is_projective(free1);
    REQUIRE(pr.projective);
    REQUIRE(counit_map(free1) * pr.splitting == Matrix::identity(f2, free1.dim()));
    REQUIRE(is_equivariant(free1, FreeModule(q8, f2, free1.dim()).materialize(), pr.splitting));

    // trivial module over a p-group in characteristic p is not projective
    REQUIRE(!is_projective(GModule::trivial(q8, f2)).projective);
    REQUIRE(!is_projective(GModule::trivial(Group::elementary_abelian(2, 2), f2)).projective);

    // in coprime characteristic everything is projective (Maschke)
    REQUIRE(is_projective(GModule::trivial(Group::cyclic(3), f2)).projective);
    REQUIRE(is_projective(GModule::trivial(Group::symmetric3(), PrimeField(5))).projective);
}

TEST_CASE("submodule packaging validates invariance") {
    Group z4 = Group::cyclic(4);
    PrimeField f(2);
    GModule reg = GModule::regular(z4, f);
    // the all-ones vector spans the socle
    Matrix span(f, 4, 1);
    for (int i = 0; i < 4; ++i) span.at(i, 0) = 1;
    ImageBasis ib = image_basis(span);
    GModule soc = submodule_as_gmodule(reg, ib.basis, ib.coords);
    REQUIRE(soc.dim() == 1);
    for (int x = 0; x < 4; ++x) REQUIRE(soc.action(x) == Matrix::identity(f, 1));

    // a non-invariant line is rejected
    Matrix line(f, 4, 1);
    line.at(0, 0) = 1;
    REQUIRE_THROWS_AS(submodule_as_gmodule(reg, line, {0}), Error);
}

TEST_CASE("transfer maps compose to the index") {
    std::mt19937_64 rng(25);
    struct Case { Group g; std::vector<int> elems; };
    Group z6 = Group::cyclic(6);
    Group s3 = Group::symmetric3();
    for (const auto& [g, elems] : {Case{z6, {0, 2, 4}}, Case{z6, {0, 3}},
                                   Case{s3, sylow_subgroup(s3, 3).elements()}}) {
        Subgroup s(g, elems);
        PrimeField f(5);
        GModule m = random_permutation_module(rng, g, f);
        TransferMaps t = transfer_maps(m, s);
        REQUIRE(t.index == s.index());
        REQUIRE(t.from_induced * t.to_induced ==
                Matrix::identity(f, m.dim()).scaled((uint32_t)(t.index % 5)));
        GModule ind = induce_module(s, restrict_module(m, s));
        REQUIRE(is_equivariant(m, ind, t.to_induced));
        REQUIRE(is_equivariant(ind, m, t.from_induced));
    }
}
