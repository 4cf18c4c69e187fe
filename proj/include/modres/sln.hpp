#pragma once

#include <cmath>
#include <map>
#include <numeric>

#include "group.hpp"

namespace modres {

/* SL(n, Z_m) enumerated outright: every n x n matrix over Z_m with det = 1,
   multiplication mod m. Matrices kept row-major next to their element index
   so subgroups and reduction maps can be read off. */
struct SLGroupDatum {
    int n = 0;
    long long m = 0;
    Group group;
    std::vector<std::vector<int>> mats;  // mats[element] = n*n entries
};

namespace detail {

inline long long det_mod(const std::vector<int>& a, int n, long long m) {
    if (n == 1) return ((long long)a[0]) % m;
    long long acc = 0;
    for (int j = 0; j < n; ++j) {
        std::vector<int> minor;
        minor.reserve((n - 1) * (n - 1));
        for (int r = 1; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (c != j) minor.push_back(a[r * n + c]);
        long long term = (long long)a[j] % m * det_mod(minor, n - 1, m) % m;
        acc = ((acc + (j % 2 ? m - term : term)) % m + m) % m;
    }
    return acc;
}

inline std::vector<int> mat_mul_mod(const std::vector<int>& a, const std::vector<int>& b, int n,
                                    long long m) {
    std::vector<int> c(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long long aik = a[i * n + k];
            if (!aik) continue;
            for (int j = 0; j < n; ++j) c[i * n + j] = (int)((c[i * n + j] + aik * b[k * n + j]) % m);
        }
    return c;
}

}  // namespace detail

inline SLGroupDatum sl_group(int n, long long m, int cap = kMaxGroupOrder) {
    require(n >= 1 && m >= 2, "sl_group: want n >= 1, m >= 2");
    double cells = std::pow((double)m, n * n);
    require(cells <= 4e6, "sl_group: candidate scan too large");
    long long total = 1;
    for (int i = 0; i < n * n; ++i) total *= m;

    std::vector<std::vector<int>> mats;
    std::map<std::vector<int>, int> index;
    for (long long code = 0; code < total; ++code) {
        std::vector<int> a(n * n);
        long long t = code;
        for (int i = n * n - 1; i >= 0; --i) {
            a[i] = (int)(t % m);
            t /= m;
        }
        if (detail::det_mod(a, n, m) != 1 % m) continue;
        require((int)mats.size() < cap, "sl_group: order cap (" + std::to_string(cap) + ") exceeded");
        index.emplace(a, (int)mats.size());
        mats.push_back(std::move(a));
    }
    int order = (int)mats.size();
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            auto it = index.find(detail::mat_mul_mod(mats[i], mats[j], n, m));
            require(it != index.end(), "sl_group: product left the set");
            table[i][j] = it->second;
        }
    Group g = Group::from_cayley(table, "SL(" + std::to_string(n) + ",Z_" + std::to_string(m) + ")");
    return SLGroupDatum{n, m, std::move(g), std::move(mats)};
}

/* Reduction mod p and mod q out of SL(n, Z_pq), glued into one map onto the
   direct product; the Chinese Remainder Theorem says it is bijective, the
   check is literal. */
struct CrtReport {
    SLGroupDatum gpq, gp, gq;
    std::vector<int> red_p, red_q;  // element-wise images of the two reductions
    bool orders_match = false;
    bool bijective = false;
};

inline CrtReport crt_check(int n, long long p, long long q, int cap = kMaxGroupOrder) {
    require(p != q, "crt_check: p = q");
    require(p >= 2 && q >= 2 && std::gcd(p, q) == 1, "crt_check: want coprime moduli");
    CrtReport rep{sl_group(n, p * q, cap), sl_group(n, p, cap), sl_group(n, q, cap), {}, {}, false,
                  false};

    std::map<std::vector<int>, int> ip, iq;
    for (int i = 0; i < (int)rep.gp.mats.size(); ++i) ip.emplace(rep.gp.mats[i], i);
    for (int i = 0; i < (int)rep.gq.mats.size(); ++i) iq.emplace(rep.gq.mats[i], i);
    auto reduce = [&](const std::vector<int>& a, long long mod, std::map<std::vector<int>, int>& idx) {
        std::vector<int> r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = (int)(a[i] % mod);
        auto it = idx.find(r);
        require(it != idx.end(), "crt_check: reduction left the group");
        return it->second;
    };
    for (const auto& a : rep.gpq.mats) {
        rep.red_p.push_back(reduce(a, p, ip));
        rep.red_q.push_back(reduce(a, q, iq));
    }
    GroupHom hp(rep.gpq.group, rep.gp.group, rep.red_p);   // ctor certifies multiplicativity
    GroupHom hq(rep.gpq.group, rep.gq.group, rep.red_q);
    rep.orders_match = rep.gpq.group.order() == rep.gp.group.order() * rep.gq.group.order();
    std::set<std::pair<int, int>> seen;
    for (int x = 0; x < rep.gpq.group.order(); ++x) seen.insert({hp(x), hq(x)});
    rep.bijective = rep.orders_match && (int)seen.size() == rep.gpq.group.order();
    return rep;
}

struct RankBoundReport {
    int n = 0;
    long long p = 0;
    uint32_t r = 0;
    int order = 0;
    int max_rank = 0;
    int bound = 0;
    int scanned = 0;  // elementary abelian r-subgroups enumerated (trivial one included)
    bool holds = false;
};

/* Exhaustive scan of the r-elementary abelian subgroups of SL(n, Z_p),
   r a prime different from p; the rank never exceeds n - 1. */
inline RankBoundReport verify_rank_bound(int n, long long p, uint32_t r, int cap = kMaxGroupOrder) {
    require(r >= 2 && (long long)r != p, "verify_rank_bound: want a prime r different from p");
    for (uint32_t d = 2; d < r; ++d) require(r % d != 0, "verify_rank_bound: r not prime");
    SLGroupDatum sl = sl_group(n, p, cap);
    RankBoundReport rep;
    rep.n = n;
    rep.p = p;
    rep.r = r;
    rep.order = sl.group.order();
    rep.bound = n - 1;
    for (const auto& [e, rk] : elementary_abelian_subgroups(sl.group, r)) {
        rep.max_rank = std::max(rep.max_rank, rk);
        ++rep.scanned;
    }
    rep.holds = rep.max_rank <= rep.bound;
    require(rep.holds, "verify_rank_bound: bound violated");  // never on a valid table
    return rep;
}

/* diag((-1)^e_1, ..., (-1)^e_n) with sum e_i even: a 2-elementary abelian
   subgroup of rank n - 1. Needs m odd so that -1 and 1 stay distinct. */
inline Subgroup diagonal_sign_subgroup(const SLGroupDatum& sl) {
    require(sl.m % 2 == 1 && sl.m >= 3, "diagonal_sign_subgroup: want odd m >= 3");
    std::vector<int> elems;
    for (int x = 0; x < (int)sl.mats.size(); ++x) {
        const auto& a = sl.mats[x];
        bool diag_sign = true;
        int minus = 0;
        for (int i = 0; i < sl.n && diag_sign; ++i)
            for (int j = 0; j < sl.n; ++j) {
                int v = a[i * sl.n + j];
                if (i != j ? v != 0 : (v != 1 && v != (int)(sl.m - 1))) {
                    diag_sign = false;
                    break;
                }
                if (i == j && v == (int)(sl.m - 1)) ++minus;
            }
        if (diag_sign && minus % 2 == 0) elems.push_back(x);
    }
    Subgroup e(sl.group, elems);
    require(e.order() == (1 << (sl.n - 1)), "diagonal_sign_subgroup: wrong order");
    require(sl.n == 1 || is_elementary_abelian(e.to_group().group, 2),
            "diagonal_sign_subgroup: not 2-elementary abelian");
    return e;
}

inline Subgroup diagonal_sign_subgroup(int n, long long m, int cap = kMaxGroupOrder) {
    return diagonal_sign_subgroup(sl_group(n, m, cap));
}

}  // namespace modres
