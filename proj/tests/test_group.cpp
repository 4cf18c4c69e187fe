#include <catch2/catch_amalgamated.hpp>

#include "modres/group.hpp"

using namespace modres;

TEST_CASE("constructors produce the expected orders") {
    REQUIRE(Group::cyclic(1).order() == 1);
    REQUIRE(Group::cyclic(7).order() == 7);
    REQUIRE(Group::dihedral(4).order() == 8);
    REQUIRE(Group::quaternion8().order() == 8);
    REQUIRE(Group::symmetric3().order() == 6);
    REQUIRE(Group::elementary_abelian(2, 3).order() == 8);
    REQUIRE(Group::elementary_abelian(3, 2).order() == 9);
    REQUIRE(Group::direct_product(Group::cyclic(2), Group::cyclic(4)).order() == 8);
}

TEST_CASE("cayley validation rejects garbage") {
    // not a latin square: second row repeats 0
    std::vector<std::vector<int>> bad = {{0, 1}, {0, 0}};
    REQUIRE_THROWS_AS(Group::from_cayley(bad), Error);
    // non-associative magma on 3 points with an identity
    std::vector<std::vector<int>> nonassoc = {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
    REQUIRE_THROWS_AS(Group::from_cayley(nonassoc), Error);
}

TEST_CASE("group axioms hold elementwise on samples") {
    for (const Group& g : {Group::dihedral(4), Group::quaternion8(), Group::symmetric3()}) {
        int e = g.identity();
        for (int a = 0; a < g.order(); ++a) {
            REQUIRE(g.mul(a, e) == a);
            REQUIRE(g.mul(e, a) == a);
            REQUIRE(g.mul(a, g.inv(a)) == e);
            for (int b = 0; b < g.order(); ++b)
                for (int c = 0; c < g.order(); ++c)
                    REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
        }
    }
}

TEST_CASE("element orders and powers") {
    Group q8 = Group::quaternion8();
    int involutions = 0;
    for (int a = 0; a < 8; ++a)
        if (q8.element_order(a) == 2) ++involutions;
    REQUIRE(involutions == 1);  // only -1

    Group z6 = Group::cyclic(6);
    REQUIRE(z6.element_order(1) == 6);
    REQUIRE(z6.power(1, 4) == 4);
    REQUIRE(z6.power(1, -1) == 5);
    REQUIRE(z6.is_abelian());
    REQUIRE(!Group::symmetric3().is_abelian());
}

TEST_CASE("p-group predicate") {
    REQUIRE(Group::cyclic(1).is_p_group(2));
    REQUIRE(Group::cyclic(8).is_p_group(2));
    REQUIRE(!Group::cyclic(6).is_p_group(2));
    REQUIRE(Group::elementary_abelian(3, 2).is_p_group(3));
    std::vector<uint32_t> pd = Group::cyclic(12).prime_divisors();
    REQUIRE(pd == std::vector<uint32_t>{2, 3});
}

TEST_CASE("closure and subgroups") {
    Group d8 = Group::dihedral(4);
    std::vector<int> whole = closure(d8, d8.generators());
    REQUIRE((int)whole.size() == 8);

    Subgroup triv = trivial_subgroup(d8);
    REQUIRE(triv.order() == 1);
    REQUIRE(triv.index() == 8);
    Subgroup full = full_subgroup(d8);
    REQUIRE(full.order() == 8);

    // a non-closed subset is rejected
    Group z4 = Group::cyclic(4);
    REQUIRE_THROWS_AS(Subgroup(z4, {0, 1}), Error);
    Subgroup half(z4, {0, 2});
    REQUIRE(half.order() == 2);
    REQUIRE(half.is_normal());
}

TEST_CASE("cosets partition the group, identity coset first") {
    Group z12 = Group::cyclic(12);
    Subgroup s(z12, {0, 4, 8});
    auto c = s.left_cosets();
    REQUIRE((int)c.reps.size() == 4);
    REQUIRE(c.coset_of[z12.identity()] == 0);
    REQUIRE(c.reps[0] == z12.identity());
    std::vector<int> count(4, 0);
    for (int x = 0; x < 12; ++x) ++count[c.coset_of[x]];
    for (int k : count) REQUIRE(k == 3);
    // rep lies in its own coset
    for (int j = 0; j < 4; ++j) REQUIRE(c.coset_of[c.reps[j]] == j);
}

TEST_CASE("subgroup as group round trip") {
    Group s3 = Group::symmetric3();
    Subgroup a3 = sylow_subgroup(s3, 3);
    REQUIRE(a3.order() == 3);
    auto ag = a3.to_group();
    REQUIRE(ag.group.order() == 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            REQUIRE(ag.to_parent[ag.group.mul(a, b)] ==
                    s3.mul(ag.to_parent[a], ag.to_parent[b]));
    for (int a = 0; a < 3; ++a) REQUIRE(ag.from_parent[ag.to_parent[a]] == a);
}

TEST_CASE("homomorphisms validate and report kernel/image") {
    Group z4 = Group::cyclic(4), z2 = Group::cyclic(2);
    GroupHom f(z4, z2, {0, 1, 0, 1});
    REQUIRE(f.is_surjective());
    REQUIRE(!f.is_injective());
    REQUIRE(f.kernel().order() == 2);
    REQUIRE(f.image().order() == 2);
    REQUIRE_THROWS_AS(GroupHom(z4, z2, {0, 1, 1, 0}), Error);  // not multiplicative

    Subgroup pre = preimage(f, trivial_subgroup(z2));
    REQUIRE(pre.elements() == std::vector<int>{0, 2});
}

TEST_CASE("quotients") {
    Group d8 = Group::dihedral(4);
    // center is {e, r^2}; find it
    std::vector<int> center;
    for (int a = 0; a < 8; ++a) {
        bool c = true;
        for (int b = 0; b < 8; ++b)
            if (d8.mul(a, b) != d8.mul(b, a)) { c = false; break; }
        if (c) center.push_back(a);
    }
    REQUIRE((int)center.size() == 2);
    auto q = quotient(d8, Subgroup(d8, center));
    REQUIRE(q.group.order() == 4);
    REQUIRE(is_isomorphic_small(q.group, Group::elementary_abelian(2, 2)));
    REQUIRE(q.projection.is_surjective());
}

TEST_CASE("sylow subgroups") {
    Group s3 = Group::symmetric3();
    REQUIRE(sylow_subgroup(s3, 2).order() == 2);
    REQUIRE(sylow_subgroup(s3, 3).order() == 3);
    REQUIRE(sylow_subgroup(s3, 5).order() == 1);
    Group z12 = Group::cyclic(12);
    REQUIRE(sylow_subgroup(z12, 2).order() == 4);
    REQUIRE(sylow_subgroup(z12, 3).order() == 3);
    Group d8 = Group::dihedral(4);
    REQUIRE(sylow_subgroup(d8, 2).order() == 8);
}

TEST_CASE("elementary abelian subgroup enumeration") {
    Group klein = Group::elementary_abelian(2, 2);
    auto all = elementary_abelian_subgroups(klein, 2);
    // trivial + three Z_2 + the whole group
    REQUIRE(all.size() == 5);
    int by_rank[3] = {0, 0, 0};
    for (const auto& [h, r] : all) {
        ++by_rank[r];
        REQUIRE(h.order() == 1 << r);
    }
    REQUIRE(by_rank[0] == 1);
    REQUIRE(by_rank[1] == 3);
    REQUIRE(by_rank[2] == 1);

    Group d8 = Group::dihedral(4);
    auto alld8 = elementary_abelian_subgroups(d8, 2);
    REQUIRE(alld8.size() == 8);  // 1 + 5 + 2
    auto maxd8 = maximal_elementary_abelian_subgroups(d8, 2);
    REQUIRE(maxd8.size() == 2);
    for (const auto& h : maxd8) REQUIRE(h.order() == 4);

    auto maxq8 = maximal_elementary_abelian_subgroups(Group::quaternion8(), 2);
    REQUIRE(maxq8.size() == 1);
    REQUIRE(maxq8[0].order() == 2);

    REQUIRE(is_elementary_abelian(klein, 2));
    REQUIRE(!is_elementary_abelian(Group::cyclic(4), 2));
    REQUIRE(is_elementary_abelian(Group::cyclic(1), 2));
}

TEST_CASE("index-p normal subgroups") {
    Group z4 = Group::cyclic(4);
    auto n4 = index_p_normal_subgroups(z4, 2);
    REQUIRE(n4.size() == 1);
    REQUIRE(n4[0].elements() == std::vector<int>{0, 2});

    auto nd8 = index_p_normal_subgroups(Group::dihedral(4), 2);
    REQUIRE(nd8.size() == 3);
    for (const auto& h : nd8) {
        REQUIRE(h.order() == 4);
        REQUIRE(h.is_normal());
    }

    auto nq8 = index_p_normal_subgroups(Group::quaternion8(), 2);
    REQUIRE(nq8.size() == 3);

    // no index-3 subgroup of a 2-group
    REQUIRE(index_p_normal_subgroups(z4, 3).empty());
}

TEST_CASE("small isomorphism testing") {
    REQUIRE(is_isomorphic_small(Group::cyclic(4), Group::cyclic(4)));
    REQUIRE(!is_isomorphic_small(Group::cyclic(4), Group::elementary_abelian(2, 2)));
    REQUIRE(!is_isomorphic_small(Group::dihedral(4), Group::quaternion8()));
    REQUIRE(!is_isomorphic_small(Group::cyclic(6), Group::symmetric3()));
    REQUIRE(is_isomorphic_small(Group::cyclic(6),
                                Group::direct_product(Group::cyclic(2), Group::cyclic(3))));
    REQUIRE(is_isomorphic_small(Group::dihedral(3), Group::symmetric3()));
}

TEST_CASE("conjugate subgroups") {
    Group s3 = Group::symmetric3();
    Subgroup h = sylow_subgroup(s3, 2);
    int moved = 0;
    for (int g = 0; g < 6; ++g) {
        Subgroup c = conjugate_subgroup(h, g);
        REQUIRE(c.order() == 2);
        if (!(c == h)) ++moved;
    }
    REQUIRE(moved > 0);  // Sylow 2-subgroups of S_3 are not normal
}
