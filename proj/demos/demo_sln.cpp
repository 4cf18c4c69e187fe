// Brute-force tour of small special linear groups: orders, the CRT splitting
// of SL(2,Z_6), the elementary abelian rank bound, and the diagonal sign
// subgroup realizing it.

#include <cstdio>

#include "modres/sln.hpp"

using namespace modres;

int main() {
    for (long long m = 2; m <= 6; ++m)
        std::printf("|SL(2,Z_%lld)| = %d\n", m, sl_group(2, m).group.order());

    CrtReport crt = crt_check(2, 2, 3);
    std::printf("SL(2,Z_6) vs SL(2,Z_2) x SL(2,Z_3): orders %d = %d * %d (%s), reduction pair %s\n",
                crt.gpq.group.order(), crt.gp.group.order(), crt.gq.group.order(),
                crt.orders_match ? "match" : "MISMATCH",
                crt.bijective ? "bijective" : "NOT bijective");

    for (long long p : {3ll, 5ll}) {
        RankBoundReport rb = verify_rank_bound(2, p, 2);
        std::printf("SL(2,Z_%lld): %d elementary abelian 2-subgroups scanned, max rank %d <= %d\n",
                    p, rb.scanned, rb.max_rank, rb.bound);
    }

    SLGroupDatum sl = sl_group(2, 3);
    Subgroup signs = diagonal_sign_subgroup(sl);
    std::printf("diagonal sign subgroup of SL(2,Z_3), order %d:\n", signs.order());
    for (int x : signs.elements()) {
        const auto& a = sl.mats[x];
        std::printf("  [%d %d; %d %d]\n", a[0], a[1], a[2], a[3]);
    }
    return 0;
}
