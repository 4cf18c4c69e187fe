#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "linalg.hpp"

namespace modres {

constexpr int kMaxGroupOrder = 200;

/* Finite group as an explicit Cayley table. Value type with shared immutable
   payload, so copies are cheap and Subgroup/GModule can hold one by value. */
class Group {
public:
    static Group from_cayley(const std::vector<std::vector<int>>& table) {
        return Group(flatten(table), "");
    }
    static Group from_cayley(const std::vector<std::vector<int>>& table, const std::string& name) {
        return Group(flatten(table), name);
    }

    static Group cyclic(int n) {
        require(n >= 1, "cyclic: n >= 1");
        std::vector<int> t((size_t)n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[(size_t)a * n + b] = (a + b) % n;
        return Group(std::move(t), "Z" + std::to_string(n));
    }

    /* Closure of permutations of {0..m-1} under composition; order capped. */
    static Group from_permutations(const std::vector<std::vector<int>>& gens,
                                   int max_order = kMaxGroupOrder) {
        require(!gens.empty(), "from_permutations: no generators");
        size_t m = gens[0].size();
        for (const auto& g : gens) {
            require(g.size() == m, "from_permutations: mixed degrees");
            std::vector<bool> seen(m, false);
            for (int v : g) {
                require(v >= 0 && v < (int)m && !seen[v], "from_permutations: not a permutation");
                seen[v] = true;
            }
        }
        std::vector<int> id(m);
        for (size_t i = 0; i < m; ++i) id[i] = (int)i;
        std::map<std::vector<int>, int> index;
        std::vector<std::vector<int>> elems;
        elems.push_back(id);
        index[id] = 0;
        for (size_t head = 0; head < elems.size(); ++head) {
            for (const auto& g : gens) {
                std::vector<int> prod(m);
                for (size_t i = 0; i < m; ++i) prod[i] = g[elems[head][i]];  // g after elems[head]
                if (index.emplace(prod, (int)elems.size()).second) {
                    elems.push_back(prod);
                    require((int)elems.size() <= max_order,
                            "from_permutations: order cap exceeded");
                }
            }
        }
        int n = (int)elems.size();
        std::vector<int> t((size_t)n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::vector<int> prod(m);
                for (size_t i = 0; i < m; ++i) prod[i] = elems[a][elems[b][i]];
                t[(size_t)a * n + b] = index.at(prod);
            }
        return Group(std::move(t), "");
    }

    static Group direct_product(const Group& g1, const Group& g2) {
        int n1 = g1.order(), n2 = g2.order();
        require((int64_t)n1 * n2 <= kMaxGroupOrder, "direct_product: order cap exceeded");
        int n = n1 * n2;
        std::vector<int> t((size_t)n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int p = g1.mul(a / n2, b / n2), q = g2.mul(a % n2, b % n2);
                t[(size_t)a * n + b] = p * n2 + q;
            }
        std::string nm;
        if (!g1.name().empty() && !g2.name().empty()) nm = g1.name() + "x" + g2.name();
        return Group(std::move(t), nm);
    }

    static Group elementary_abelian(int p, int r) {
        Group g = cyclic(p);
        Group out = g;
        for (int i = 1; i < r; ++i) out = direct_product(out, g);
        return out;
    }

    static Group dihedral(int n) {  // order 2n
        require(n >= 1, "dihedral: n >= 1");
        if (n <= 2) {  // D_1 = Z_2, D_2 = Klein: the n-gon action is not faithful there
            Group c2 = cyclic(2);
            return n == 1 ? c2 : direct_product(c2, c2);
        }
        std::vector<int> r(n), s(n);
        for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
        for (int i = 0; i < n; ++i) s[i] = (n - i) % n;
        Group g = from_permutations({r, s}, 2 * n);
        require(g.order() == 2 * n, "dihedral: closure has wrong order");
        return g;
    }

    static Group quaternion8() {
        // elements 0..7 = 1,-1,i,-i,j,-j,k,-k; sign bit is the low bit
        auto axis = [](int e) { return e >> 1; };    // 0:1, 1:i, 2:j, 3:k
        auto sign = [](int e) { return e & 1; };
        // unit quaternion multiplication: axis table, and sg=1 where the result is negated
        // (i*i = -1, i*j = k, j*i = -k, ...)
        static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
        std::vector<std::vector<int>> t(8, std::vector<int>(8));
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                int s = sign(a) ^ sign(b) ^ sg[axis(a)][axis(b)];
                t[a][b] = (ax[axis(a)][axis(b)] << 1) | s;
            }
        Group g = from_cayley(t, "Q8");
        return g;
    }

    static Group symmetric3() {
        return from_permutations({{1, 2, 0}, {1, 0, 2}}, 6);
    }

    int order() const { return d_->n; }
    int mul(int a, int b) const { return d_->cayley[(size_t)a * d_->n + b]; }
    int inv(int a) const { return d_->inverse[a]; }
    int identity() const { return d_->identity; }
    const std::vector<int>& generators() const { return d_->generators; }
    const std::string& name() const { return d_->name; }

    int element_order(int a) const {
        int e = identity(), x = a, k = 1;
        while (x != e) { x = mul(x, a); ++k; }
        return k;
    }
    int power(int a, int k) const {
        int e = identity();
        if (k < 0) { a = inv(a); k = -k; }
        int r = e;
        while (k--) r = mul(r, a);
        return r;
    }
    bool is_abelian() const { return d_->abelian; }
    bool is_p_group(uint32_t p) const {
        int n = order();
        while (n % (int)p == 0) n /= (int)p;
        return n == 1;
    }
    std::vector<uint32_t> prime_divisors() const {
        std::vector<uint32_t> ps;
        int n = order();
        for (int d = 2; d <= n; ++d)
            if (n % d == 0) {
                ps.push_back((uint32_t)d);
                while (n % d == 0) n /= d;
            }
        return ps;
    }

    const std::vector<std::vector<int>> cayley() const {
        std::vector<std::vector<int>> t(order(), std::vector<int>(order()));
        for (int a = 0; a < order(); ++a)
            for (int b = 0; b < order(); ++b) t[a][b] = mul(a, b);
        return t;
    }

    bool operator==(const Group& o) const {
        return d_ == o.d_ || (d_->n == o.d_->n && d_->cayley == o.d_->cayley);
    }
    bool operator!=(const Group& o) const { return !(*this == o); }

private:
    struct Data {
        int n = 0;
        std::vector<int> cayley;
        int identity = -1;
        std::vector<int> inverse;
        std::vector<int> generators;
        bool abelian = true;
        std::string name;
    };

    static std::vector<int> flatten(const std::vector<std::vector<int>>& table) {
        int n = (int)table.size();
        std::vector<int> t;
        t.reserve((size_t)n * n);
        for (const auto& row : table) {
            require((int)row.size() == n, "Group: Cayley table not square");
            for (int v : row) t.push_back(v);
        }
        return t;
    }

    explicit Group(std::vector<int> flat, const std::string& name) {
        auto d = std::make_shared<Data>();
        int n = d->n = flat.empty() ? 0 : (int)std::round(std::sqrt((double)flat.size()));
        require(n >= 1 && (size_t)n * n == flat.size(), "Group: Cayley table not square");
        require(n <= kMaxGroupOrder, "Group: order cap (" + std::to_string(kMaxGroupOrder) + ") exceeded");
        d->cayley = std::move(flat);
        d->name = name;
        auto at = [&](int a, int b) { return d->cayley[(size_t)a * n + b]; };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int v = at(a, b);
                require(v >= 0 && v < n, "Group: entry out of range at (" + std::to_string(a) +
                                             "," + std::to_string(b) + ")");
            }
        // identity: two-sided
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int a = 0; a < n && ok; ++a) ok = at(e, a) == a && at(a, e) == a;
            if (ok) { d->identity = e; break; }
        }
        require(d->identity >= 0, "Group: no identity element");
        // associativity, reported with the offending triple
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    require(at(at(a, b), c) == at(a, at(b, c)),
                            "Group: associativity fails at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
        d->inverse.assign(n, -1);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                if (at(a, b) == d->identity && at(b, a) == d->identity) { d->inverse[a] = b; break; }
            require(d->inverse[a] >= 0, "Group: element " + std::to_string(a) + " has no inverse");
        }
        for (int a = 0; a < n && d->abelian; ++a)
            for (int b = a + 1; b < n; ++b)
                if (at(a, b) != at(b, a)) { d->abelian = false; break; }

        /* greedy generating set: repeatedly adjoin the smallest element
           outside the running closure; deterministic, at most log2 |G| long */
        {
            std::vector<int> gens;
            std::vector<bool> in(n, false);
            in[d->identity] = true;
            int covered = 1;
            while (covered < n) {
                int next = -1;
                for (int x = 0; x < n; ++x)
                    if (!in[x]) { next = x; break; }
                gens.push_back(next);
                std::vector<int> queue = {next};
                in[next] = true;
                ++covered;
                while (!queue.empty()) {
                    int x = queue.back();
                    queue.pop_back();
                    for (int y = 0; y < n; ++y) {
                        if (!in[y]) continue;
                        for (int z : {at(x, y), at(y, x)}) {
                            if (!in[z]) {
                                in[z] = true;
                                ++covered;
                                queue.push_back(z);
                            }
                        }
                    }
                }
            }
            d->generators = std::move(gens);
        }
        d_ = std::move(d);
    }

    std::shared_ptr<const Data> d_;
};

inline std::vector<int> closure(const Group& g, std::vector<int> seed) {
    std::vector<bool> in(g.order(), false);
    std::vector<int> work;
    auto add = [&](int x) {
        if (!in[x]) { in[x] = true; work.push_back(x); }
    };
    add(g.identity());
    for (int s : seed) {
        require(s >= 0 && s < g.order(), "closure: element out of range");
        add(s);
    }
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            add(g.mul(work[i], work[j]));
            add(g.mul(work[j], work[i]));
        }
    std::vector<int> out;
    for (int x = 0; x < g.order(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

/* Subgroup = parent group + sorted element subset; closure under product and
   inverse is checked at construction. */
class Subgroup {
public:
    Subgroup(Group parent, std::vector<int> elems) : parent_(std::move(parent)), elems_(std::move(elems)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        require(!elems_.empty(), "Subgroup: empty");
        std::vector<bool> in(parent_.order(), false);
        for (int x : elems_) {
            require(x >= 0 && x < parent_.order(), "Subgroup: element out of range");
            in[x] = true;
        }
        require(in[parent_.identity()], "Subgroup: identity missing");
        for (int a : elems_) {
            require(in[parent_.inv(a)], "Subgroup: not closed under inverse");
            for (int b : elems_) require(in[parent_.mul(a, b)], "Subgroup: not closed under product");
        }
        require(parent_.order() % (int)elems_.size() == 0, "Subgroup: Lagrange violation");
    }

    const Group& parent() const { return parent_; }
    const std::vector<int>& elements() const { return elems_; }
    int order() const { return (int)elems_.size(); }
    int index() const { return parent_.order() / order(); }
    bool contains(int x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

    bool is_normal() const {
        for (int g = 0; g < parent_.order(); ++g)
            for (int h : elems_)
                if (!contains(parent_.mul(parent_.mul(g, h), parent_.inv(g)))) return false;
        return true;
    }

    /* The subgroup as an abstract group; to_parent maps its element indices
       back into the parent. */
    struct AsGroup {
        Group group;
        std::vector<int> to_parent;
        std::vector<int> from_parent;  // -1 outside the subgroup
    };
    AsGroup to_group() const {
        int m = order();
        std::vector<int> from(parent_.order(), -1);
        for (int i = 0; i < m; ++i) from[elems_[i]] = i;
        std::vector<std::vector<int>> t(m, std::vector<int>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) t[i][j] = from[parent_.mul(elems_[i], elems_[j])];
        return AsGroup{Group::from_cayley(t), elems_, std::move(from)};
    }

    /* Left cosets gH, ordered by minimal element; the coset of the identity
       is represented by the identity itself so induced free modules keep the
       standard generator labels. */
    struct Cosets {
        std::vector<int> reps;
        std::vector<int> coset_of;  // element -> coset index
    };
    Cosets left_cosets() const {
        int n = parent_.order();
        std::vector<int> coset_of(n, -1);
        std::vector<std::pair<int, int>> keyed;  // (min elem, rep)
        for (int g = 0; g < n; ++g) {
            if (coset_of[g] >= 0) continue;
            int mn = n, has_id = -1;
            std::vector<int> members;
            for (int h : elems_) {
                int x = parent_.mul(g, h);
                members.push_back(x);
                mn = std::min(mn, x);
                if (x == parent_.identity()) has_id = x;
            }
            int rep = has_id >= 0 ? has_id : mn;
            int idx = (int)keyed.size();
            keyed.push_back({mn, rep});
            for (int x : members) coset_of[x] = idx;
        }
        // reorder by minimal element
        std::vector<int> perm(keyed.size());
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = (int)i;
        std::sort(perm.begin(), perm.end(), [&](int a, int b) { return keyed[a].first < keyed[b].first; });
        std::vector<int> newpos(keyed.size());
        for (size_t i = 0; i < perm.size(); ++i) newpos[perm[i]] = (int)i;
        Cosets c;
        c.reps.resize(keyed.size());
        for (size_t i = 0; i < perm.size(); ++i) c.reps[i] = keyed[perm[i]].second;
        c.coset_of.resize(n);
        for (int g = 0; g < n; ++g) c.coset_of[g] = newpos[coset_of[g]];
        return c;
    }

    bool operator==(const Subgroup& o) const { return parent_ == o.parent_ && elems_ == o.elems_; }

private:
    Group parent_;
    std::vector<int> elems_;
};

inline Subgroup trivial_subgroup(const Group& g) { return Subgroup(g, {g.identity()}); }
inline Subgroup full_subgroup(const Group& g) {
    std::vector<int> all(g.order());
    for (int i = 0; i < g.order(); ++i) all[i] = i;
    return Subgroup(g, all);
}

inline Subgroup conjugate_subgroup(const Subgroup& h, int g) {
    const Group& G = h.parent();
    std::vector<int> elems;
    for (int x : h.elements()) elems.push_back(G.mul(G.mul(g, x), G.inv(g)));
    return Subgroup(G, elems);
}

class GroupHom {
public:
    GroupHom(Group src, Group tgt, std::vector<int> img)
        : src_(std::move(src)), tgt_(std::move(tgt)), img_(std::move(img)) {
        require((int)img_.size() == src_.order(), "GroupHom: image table size mismatch");
        for (int v : img_) require(v >= 0 && v < tgt_.order(), "GroupHom: image out of range");
        for (int a = 0; a < src_.order(); ++a)
            for (int b = 0; b < src_.order(); ++b)
                require(img_[src_.mul(a, b)] == tgt_.mul(img_[a], img_[b]),
                        "GroupHom: not multiplicative at (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
    }

    const Group& source() const { return src_; }
    const Group& target() const { return tgt_; }
    int operator()(int x) const { return img_[x]; }
    const std::vector<int>& image_table() const { return img_; }

    Subgroup kernel() const {
        std::vector<int> k;
        for (int x = 0; x < src_.order(); ++x)
            if (img_[x] == tgt_.identity()) k.push_back(x);
        return Subgroup(src_, k);
    }
    Subgroup image() const {
        std::set<int> im(img_.begin(), img_.end());
        return Subgroup(tgt_, std::vector<int>(im.begin(), im.end()));
    }
    bool is_surjective() const {
        std::set<int> im(img_.begin(), img_.end());
        return (int)im.size() == tgt_.order();
    }
    bool is_injective() const {
        std::set<int> im(img_.begin(), img_.end());
        return (int)im.size() == src_.order();
    }
    bool is_bijective() const { return src_.order() == tgt_.order() && is_surjective(); }

private:
    Group src_, tgt_;
    std::vector<int> img_;
};

inline Subgroup preimage(const GroupHom& f, const Subgroup& s) {
    require(s.parent() == f.target(), "preimage: subgroup not in target");
    std::vector<int> elems;
    for (int x = 0; x < f.source().order(); ++x)
        if (s.contains(f(x))) elems.push_back(x);
    return Subgroup(f.source(), elems);
}

struct QuotientResult {
    Group group;
    GroupHom projection;
};

inline QuotientResult quotient(const Group& g, const Subgroup& n) {
    require(n.parent() == g, "quotient: subgroup of a different group");
    require(n.is_normal(), "quotient: subgroup is not normal");
    auto cosets = n.left_cosets();
    int q = (int)cosets.reps.size();
    std::vector<std::vector<int>> t(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) t[a][b] = cosets.coset_of[g.mul(cosets.reps[a], cosets.reps[b])];
    Group quot = Group::from_cayley(t);
    return QuotientResult{quot, GroupHom(g, quot, cosets.coset_of)};
}

inline Subgroup sylow_subgroup(const Group& g, uint32_t p) {
    int target = 1;
    {
        int n = g.order();
        while (n % (int)p == 0) { n /= (int)p; target *= (int)p; }
    }
    if (target == 1) return trivial_subgroup(g);
    auto is_ppower = [&](int k) {
        while (k % (int)p == 0) k /= (int)p;
        return k == 1;
    };
    // DFS over closures of p-element sets, ascending element order for determinism
    std::vector<int> found;
    std::function<bool(const std::vector<int>&)> grow = [&](const std::vector<int>& h) {
        if ((int)h.size() == target) { found = h; return true; }
        for (int x = 0; x < g.order(); ++x) {
            if (std::binary_search(h.begin(), h.end(), x)) continue;
            if (!is_ppower(g.element_order(x))) continue;
            std::vector<int> seed = h;
            seed.push_back(x);
            std::vector<int> k = closure(g, seed);
            if ((int)k.size() > target || !is_ppower((int)k.size())) continue;
            if (grow(k)) return true;
        }
        return false;
    };
    require(grow({g.identity()}), "sylow_subgroup: search failed (should not happen)");
    return Subgroup(g, found);
}

/* All elementary abelian p-subgroups, with ranks. Level-by-level: every rank
   r+1 subgroup is the closure of a rank r one with one more commuting
   element of order p. Includes the trivial subgroup at rank 0. */
inline std::vector<std::pair<Subgroup, int>> elementary_abelian_subgroups(const Group& g, uint32_t p) {
    std::vector<int> order_p;
    for (int x = 0; x < g.order(); ++x)
        if (g.element_order(x) == (int)p) order_p.push_back(x);
    std::vector<std::pair<Subgroup, int>> out;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> level = {{g.identity()}};
    seen.insert(level[0]);
    out.push_back({Subgroup(g, level[0]), 0});
    int rank = 0;
    while (!level.empty()) {
        ++rank;
        std::vector<std::vector<int>> next;
        for (const auto& h : level) {
            for (int x : order_p) {
                if (std::binary_search(h.begin(), h.end(), x)) continue;
                bool commutes = true;
                for (int y : h)
                    if (g.mul(x, y) != g.mul(y, x)) { commutes = false; break; }
                if (!commutes) continue;
                std::vector<int> seed = h;
                seed.push_back(x);
                std::vector<int> k = closure(g, seed);
                if (seen.insert(k).second) {
                    out.push_back({Subgroup(g, k), rank});
                    next.push_back(k);
                }
            }
        }
        level = std::move(next);
    }
    return out;
}

inline bool is_elementary_abelian(const Group& g, uint32_t p) {
    if (!g.is_abelian()) return false;
    for (int a = 0; a < g.order(); ++a)
        if (a != g.identity() && g.element_order(a) != (int)p) return false;
    return true;
}

inline std::vector<Subgroup> maximal_elementary_abelian_subgroups(const Group& g, uint32_t p) {
    auto all = elementary_abelian_subgroups(g, p);
    std::vector<Subgroup> out;
    for (const auto& [h, r] : all) {
        bool maximal = true;
        for (const auto& [k, r2] : all) {
            if (r2 <= r) continue;
            if (std::includes(k.elements().begin(), k.elements().end(), h.elements().begin(),
                              h.elements().end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(h);
    }
    return out;
}

/* Normal subgroups of index p = kernels of surjections G -> Z_p. These all
   contain K = <commutators, p-th powers>, and correspond to hyperplanes of
   the elementary abelian quotient G/K. */
inline std::vector<Subgroup> index_p_normal_subgroups(const Group& g, uint32_t p) {
    std::vector<int> seed;
    for (int a = 0; a < g.order(); ++a) {
        seed.push_back(g.power(a, (int)p));
        for (int b = 0; b < g.order(); ++b)
            seed.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    }
    Subgroup k(g, closure(g, seed));
    auto quo = quotient(g, k);
    const Group& q = quo.group;
    if (q.order() == 1) return {};
    // q is elementary abelian of order p^r; find a basis greedily
    std::vector<int> basis;
    std::vector<int> span = {q.identity()};
    while ((int)span.size() < q.order()) {
        int next = -1;
        for (int x = 0; x < q.order(); ++x)
            if (!std::binary_search(span.begin(), span.end(), x)) { next = x; break; }
        basis.push_back(next);
        span = closure(q, basis);
        std::sort(span.begin(), span.end());
    }
    int r = (int)basis.size();
    // coordinates of each element of q by enumerating all p^r words
    std::map<int, std::vector<uint32_t>> coords;
    std::vector<uint32_t> word(r, 0);
    for (;;) {
        int x = q.identity();
        for (int i = 0; i < r; ++i) x = q.mul(x, q.power(basis[i], (int)word[i]));
        coords[x] = word;
        int i = 0;
        while (i < r && ++word[i] == p) word[i++] = 0;
        if (i == r) break;
    }
    // functionals up to scalar: first nonzero coefficient = 1
    std::vector<Subgroup> out;
    std::vector<uint32_t> c(r, 0);
    for (;;) {
        int i = 0;
        while (i < r && ++c[i] == p) c[i++] = 0;
        if (i == r) break;
        int lead = -1;
        for (int j = r - 1; j >= 0; --j)
            if (c[j]) lead = j;
        if (lead < 0 || c[lead] != 1) continue;
        std::vector<int> elems;
        for (int x = 0; x < g.order(); ++x) {
            const auto& co = coords.at(quo.projection(x));
            uint64_t dot = 0;
            for (int j = 0; j < r; ++j) dot += (uint64_t)c[j] * co[j];
            if (dot % p == 0) elems.push_back(x);
        }
        out.push_back(Subgroup(g, elems));
    }
    std::sort(out.begin(), out.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.elements() < b.elements(); });
    return out;
}

constexpr int kMaxIsoOrder = 64;

/* Exhaustive generator-image isomorphism search for small groups. Cheap
   invariants first, then DFS on generator images with partial-closure
   consistency checks. */
inline bool is_isomorphic_small(const Group& g1, const Group& g2) {
    if (g1.order() != g2.order()) return false;
    require(g1.order() <= kMaxIsoOrder, "is_isomorphic_small: order cap exceeded");
    int n = g1.order();
    auto profile = [](const Group& g) {
        std::vector<int> p;
        for (int x = 0; x < g.order(); ++x) p.push_back(g.element_order(x));
        std::sort(p.begin(), p.end());
        return p;
    };
    if (profile(g1) != profile(g2)) return false;
    if (g1.is_abelian() != g2.is_abelian()) return false;
    auto center_size = [](const Group& g) {
        int c = 0;
        for (int x = 0; x < g.order(); ++x) {
            bool central = true;
            for (int y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
            c += central;
        }
        return c;
    };
    if (center_size(g1) != center_size(g2)) return false;

    const auto& gens = g1.generators();
    std::vector<int> img(gens.size(), -1);
    long nodes = 0;
    const long kBudget = 500000;

    /* Build the forced partial hom on <gens[0..k]>: worklist closure so every
       pair of known elements is checked in both orders. Returns the number of
       elements it is defined on, or -1 on any conflict. Conflicts are genuine
       (image values are forced), so pruning is sound. */
    auto extend = [&](size_t upto) -> int {
        std::vector<int> map(n, -1);
        std::vector<bool> used(n, false);
        std::vector<int> known;
        auto add = [&](int x, int fx) {
            if (map[x] != -1) return map[x] == fx;
            if (used[fx]) return false;  // injectivity
            map[x] = fx;
            used[fx] = true;
            known.push_back(x);
            return true;
        };
        if (!add(g1.identity(), g2.identity())) return -1;
        for (size_t t = 0; t <= upto; ++t)
            if (!add(gens[t], img[t])) return -1;
        for (size_t h = 0; h < known.size(); ++h)
            for (size_t j = 0; j <= h; ++j) {
                int a = known[h], b = known[j];
                if (!add(g1.mul(a, b), g2.mul(map[a], map[b]))) return -1;
                if (!add(g1.mul(b, a), g2.mul(map[b], map[a]))) return -1;
            }
        return (int)known.size();
    };

    std::function<bool(size_t)> dfs = [&](size_t k) -> bool {
        // once every generator is placed, the parent's extend() already walked
        // the full closure (= all of g1) conflict-free and injectively
        if (k == gens.size()) return true;
        int ord = g1.element_order(gens[k]);
        for (int cand = 0; cand < n; ++cand) {
            if (g2.element_order(cand) != ord) continue;
            require(++nodes <= kBudget, "is_isomorphic_small: search budget exceeded");
            img[k] = cand;
            if (extend(k) >= 0 && dfs(k + 1)) return true;
        }
        img[k] = -1;
        return false;
    };
    return dfs(0);
}

}  // namespace modres
