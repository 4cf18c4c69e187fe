// Walk the product-transport pipeline by hand on the dihedral group of
// order 8: find a dead product of Bockstein classes, resolve the index-2
// subgroups it names, and push the result back up to a resolution over G.

#include <cstdio>

#include "modres/bockstein.hpp"

using namespace modres;

int main() {
    Group g = Group::dihedral(4);
    PrimeField f(2);
    GModule k = GModule::trivial(g, f);
    std::printf("G = %s (order %d), M = k over F_2\n", "D_8", g.order());

    auto wit = serre_search(k, 3);
    if (!wit) {
        std::printf("no vanishing product up to length 3 (unexpected)\n");
        return 1;
    }
    std::printf("dead product of %d Bockstein classes, class degree %d\n", wit->m, wit->cls.degree);
    for (const BocksteinDatum& bd : wit->data) {
        std::printf("  factor through the index-2 subgroup {");
        const auto& e = bd.l.elements();
        for (size_t i = 0; i < e.size(); ++i) std::printf("%s%d", i ? "," : "", e[i]);
        std::printf("}\n");
    }

    const int out_len = 8;
    int t0 = 2 * wit->m - 1;
    std::vector<TransportColumn> cols;
    for (const BocksteinDatum& bd : wit->data) {
        GModule rm = restrict_module(k, bd.l);
        GModule pad = GModule::trivial(bd.l.to_group().group, f, 0);
        FreeResolution col = materialize(resolve(rm, out_len + t0, true));
        std::printf("column over a subgroup of order %d: ranks", bd.l.order());
        for (int r : col.ranks) std::printf(" %d", r);
        std::printf("\n");
        cols.push_back(TransportColumn{bd, pad, col});
    }

    TransportResult tr = transport_resolution(k, cols, out_len, ComplexityFunction::polynomial(1));
    std::printf("transported resolution of k (+) N over G, N of dimension %d\n", tr.n_module.dim());
    std::printf("  ranks    ");
    for (int r : tr.res.ranks) std::printf(" %3d", r);
    std::printf("\n  predicted");
    for (int r : tr.predicted) std::printf(" %3d", r);
    std::printf("\n  rank formula %s\n", tr.rank_formula_ok ? "matches" : "MISMATCH");
    if (tr.verdict)
        std::printf("  growth vs (n+1)^1: %s, witness constant %s\n",
                    tr.verdict->holds ? "bounded" : "not bounded", tr.verdict->witness.str().c_str());
    return 0;
}
