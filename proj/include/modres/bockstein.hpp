#pragma once

#include <optional>

#include "wall.hpp"

namespace modres {

/* An index-p normal subgroup L of G together with the degree-one class it
   carries: zeta : G ->> Z/p with kernel L, normalized so the smallest
   element outside L maps to 1. */
struct BocksteinDatum {
    Group g;
    uint32_t p = 0;
    Subgroup l;
    int x = -1;             // smallest element of G \ L; xL generates G/L
    std::vector<int> zeta;  // element -> exponent in [0, p)

    static BocksteinDatum make(const Group& g, const Subgroup& l, uint32_t p) {
        require(l.parent() == g, "BocksteinDatum: subgroup of a different group");
        require(l.is_normal(), "BocksteinDatum: subgroup not normal");
        require(l.index() == (int)p, "BocksteinDatum: index is not p");
        int x = -1;
        for (int a = 0; a < g.order(); ++a)
            if (!l.contains(a)) { x = a; break; }
        require(x >= 0, "BocksteinDatum: no element outside the subgroup");
        auto quo = quotient(g, l);
        std::vector<int> dlog(p, -1);
        int cur = quo.group.identity();
        for (uint32_t k = 0; k < p; ++k) {
            dlog[cur] = (int)k;
            cur = quo.group.mul(cur, quo.projection(x));
        }
        require(cur == quo.group.identity(), "BocksteinDatum: quotient not cyclic of order p");
        std::vector<int> zeta(g.order());
        for (int a = 0; a < g.order(); ++a) zeta[a] = dlog[quo.projection(a)];
        return BocksteinDatum{g, p, l, x, std::move(zeta)};
    }
};

/* One datum per index-p normal subgroup, in the deterministic order the
   subgroup enumeration produces. */
inline std::vector<BocksteinDatum> bockstein_data(const Group& g, uint32_t p) {
    std::vector<BocksteinDatum> out;
    for (const Subgroup& l : index_p_normal_subgroups(g, p)) out.push_back(BocksteinDatum::make(g, l, p));
    return out;
}

namespace detail {

/* e_c -> e_{c+k} on k[G/L], cosets written as powers of x. */
inline Matrix coset_shift(PrimeField f, uint32_t p, int k) {
    Matrix s(f, (int)p, (int)p);
    for (uint32_t c = 0; c < p; ++c) s.at((int)((c + (uint32_t)k) % p), (int)c) = 1;
    return s;
}

}  // namespace detail

/* k[G/L] (x) M with the diagonal action; coset x^c L (x) basis vector v sits
   at coordinate c*dim(M)+v, and g moves the coset block c to c + zeta(g). */
inline GModule coset_twist(const BocksteinDatum& bd, const GModule& m) {
    require(m.group() == bd.g, "coset_twist: module over a different group");
    std::vector<Matrix> act;
    act.reserve(bd.g.order());
    for (int a = 0; a < bd.g.order(); ++a)
        act.push_back(Matrix::kronecker(detail::coset_shift(m.field(), bd.p, bd.zeta[a]), m.action(a)));
    return GModule(bd.g, m.field(), std::move(act), false);
}

/* The untwist isomorphism Ind_L^G(res M) -> k[G/L] (x) M, t_j (x) w ->
   (coset of t_j) (x) t_j.w; a block permutation with blocks rho(t_j), so
   the inverse is exact and explicit. */
inline Matrix untwist(const BocksteinDatum& bd, const GModule& m) {
    auto cosets = bd.l.left_cosets();
    int q = (int)cosets.reps.size(), d = m.dim();
    Matrix u(m.field(), q * d, q * d);
    for (int j = 0; j < q; ++j) u.set_block(bd.zeta[cosets.reps[j]] * d, j * d, m.action(cosets.reps[j]));
    return u;
}

inline Matrix untwist_inverse(const BocksteinDatum& bd, const GModule& m) {
    auto cosets = bd.l.left_cosets();
    int q = (int)cosets.reps.size(), d = m.dim();
    Matrix u(m.field(), q * d, q * d);
    for (int j = 0; j < q; ++j)
        u.set_block(j * d, bd.zeta[cosets.reps[j]] * d, m.action(bd.g.inv(cosets.reps[j])));
    return u;
}

/* A 2m-step self-extension 0 -> M -> X_{2m-1} -> ... -> X_0 -> M -> 0.
   d[i] : X_i -> X_{i-1} for i >= 1 ([0] dummy), head : M -> X_{2m-1},
   tail : X_0 -> M. Provenance lists the data that built it, rightmost
   factor first, with the padding module used for each (dim 0 = none). */
struct YonedaSequence {
    GModule m;
    std::vector<GModule> terms;
    std::vector<Matrix> d;
    Matrix head, tail;
    std::vector<BocksteinDatum> provenance;
    std::vector<GModule> padding;

    int half() const { return (int)terms.size() / 2; }

    /* Exactness by rank bookkeeping: once every composite is zero, im = ker
       at each position follows from rank equalities alone. */
    void check() const {
        int top = (int)terms.size() - 1;
        require(top >= 1 && terms.size() % 2 == 0 && d.size() == terms.size(), "YonedaSequence: shape");
        require(is_equivariant(m, terms[top], head), "YonedaSequence: head not equivariant");
        require(is_equivariant(terms[0], m, tail), "YonedaSequence: tail not equivariant");
        for (int i = 1; i <= top; ++i)
            require(is_equivariant(terms[i], terms[i - 1], d[i]),
                    "YonedaSequence: d[" + std::to_string(i) + "] not equivariant");
        require((tail * d[1]).is_zero(), "YonedaSequence: tail . d[1] != 0");
        for (int i = 2; i <= top; ++i)
            require((d[i - 1] * d[i]).is_zero(), "YonedaSequence: d^2 != 0 at " + std::to_string(i));
        require((d[top] * head).is_zero(), "YonedaSequence: d[top] . head != 0");
        require(rank(tail) == m.dim(), "YonedaSequence: tail not surjective");
        int expect = terms[0].dim() - m.dim();
        for (int i = 1; i <= top; ++i) {
            require(rank(d[i]) == expect,
                    "YonedaSequence: homology at position " + std::to_string(i - 1));
            expect = terms[i].dim() - expect;
        }
        require(rank(head) == m.dim() && expect == m.dim(), "YonedaSequence: head end not exact");
    }
};

/* The degree-2 self-extension attached to (L, zeta),

       0 -> M -> X -> X -> M -> 0,   X = Ind_L^G(res M (+) N);

   in the twisted coordinates (k[G/L] (x) M) (+) Ind(N) the maps are the
   sum-over-cosets embedding, (shift - 1) (x) id extended by the identity on
   the padding, and the sum of coset coordinates. The padding N (any module
   over L) fattens the terms without changing the extension class. */
inline YonedaSequence bockstein_sequence(const BocksteinDatum& bd, const GModule& m,
                                         const std::optional<GModule>& padding = std::nullopt) {
    require(m.group() == bd.g, "bockstein_sequence: module over a different group");
    PrimeField f = m.field();
    int dm = m.dim(), q = (int)bd.p;
    auto sg = bd.l.to_group();
    GModule pad = padding ? *padding : GModule::trivial(sg.group, f, 0);
    require(pad.group() == sg.group && pad.field() == f,
            "bockstein_sequence: padding not a module over the subgroup");
    int dp = pad.dim();

    GModule inner = restrict_module(m, bd.l).direct_sum(pad);
    GModule x = induce_module(bd.l, inner);

    Matrix w = induction_unshuffle(f, q, dm, dp);
    Matrix u = Matrix::block_diag(untwist(bd, m), Matrix::identity(f, q * dp)) * w;
    Matrix uinv = w.transpose() * Matrix::block_diag(untwist_inverse(bd, m), Matrix::identity(f, q * dp));

    Matrix id_m = Matrix::identity(f, dm);
    Matrix alpha(f, q * dm, dm);
    Matrix gamma(f, dm, q * dm);
    for (int c = 0; c < q; ++c) {
        alpha.set_block(c * dm, 0, id_m);
        gamma.set_block(0, c * dm, id_m);
    }
    Matrix delta = Matrix::kronecker(detail::coset_shift(f, bd.p, 1) - Matrix::identity(f, q), id_m);

    Matrix head = uinv * Matrix::vstack(alpha, Matrix(f, q * dp, dm));
    Matrix tail = Matrix::hstack(gamma, Matrix(f, dm, q * dp)) * u;
    Matrix d1 = uinv * Matrix::block_diag(delta, Matrix::identity(f, q * dp)) * u;

    YonedaSequence y{m,      {x, x},          {Matrix(f, 0, 0), std::move(d1)},
                     std::move(head), std::move(tail), {bd},
                     {pad}};
    y.check();
    return y;
}

/* Concatenate self-extensions of the same module; list[0] sits in the lowest
   degrees (rightmost factor). Each seam map is the head of the inner piece
   composed with the tail of the next. */
inline YonedaSequence splice(const std::vector<YonedaSequence>& list) {
    require(!list.empty(), "splice: nothing to splice");
    const GModule& m = list[0].m;
    YonedaSequence out{m, {}, {Matrix(m.field(), 0, 0)}, list.back().head, list[0].tail, {}, {}};
    for (size_t i = 0; i < list.size(); ++i) {
        const YonedaSequence& y = list[i];
        require(same_module(y.m, m), "splice: end modules differ");
        if (i > 0) out.d.push_back(list[i - 1].head * y.tail);
        for (size_t j = 0; j < y.terms.size(); ++j) {
            out.terms.push_back(y.terms[j]);
            if (j > 0) out.d.push_back(y.d[j]);
        }
        out.provenance.insert(out.provenance.end(), y.provenance.begin(), y.provenance.end());
        out.padding.insert(out.padding.end(), y.padding.begin(), y.padding.end());
    }
    out.check();
    return out;
}

/* A degree-n self-extension class as a cocycle on a fixed free resolution
   of M: a map F_n -> M vanishing on im d_{n+1}. */
struct ExtClassRep {
    int degree = 0;
    Matrix cocycle;
};

/* Comparison lift of id_M through the sequence: tail phi_0 = aug and
   d[j] phi_j = phi_{j-1} d[j]; every step is solvable because F is exact
   and the X_j resolve along the sequence. phi0 can override the first step
   (used to exhibit independence of the lift). */
inline std::vector<Matrix> lift_into_sequence(const YonedaSequence& y, const FreeResolution& fr,
                                              const std::optional<Matrix>& phi0 = std::nullopt) {
    int n2 = (int)y.terms.size();
    require(fr.length() >= n2, "lift_into_sequence: resolution shorter than the sequence");
    require(same_module(fr.module, y.m), "lift_into_sequence: resolution of a different module");
    std::vector<Matrix> phi;
    if (phi0) {
        require(y.tail * *phi0 == fr.aug, "lift_into_sequence: phi0 is not a lift of the augmentation");
        require(is_equivariant(fr.term(0).materialize(), y.terms[0], *phi0),
                "lift_into_sequence: phi0 not equivariant");
        phi.push_back(*phi0);
    } else {
        Matrix bg = fr.aug.cols_subset(free_generator_columns(fr.term(0)));
        auto g0 = solve_many(y.tail, bg);
        require(g0.has_value(), "lift_into_sequence: tail not surjective");
        phi.push_back(extend_to_module(fr.term(0), y.terms[0], *g0));
    }
    for (int j = 1; j < n2; ++j) {
        Matrix rhs = (phi[j - 1] * fr.d[j]).cols_subset(free_generator_columns(fr.term(j)));
        auto gj = solve_many(y.d[j], rhs);
        require(gj.has_value(), "lift_into_sequence: no lift at degree " + std::to_string(j));
        phi.push_back(extend_to_module(fr.term(j), y.terms[j], *gj));
    }
    return phi;
}

/* The class of the sequence on F: c = head^{-1} . phi_{2m-1} . d_{2m}. The
   pullback through head is solvable because the lift lands in the head copy
   of M; the cocycle identity is certified when F extends one degree past. */
inline ExtClassRep ext_class(const YonedaSequence& y, const FreeResolution& fr,
                             const std::optional<Matrix>& phi0 = std::nullopt) {
    int n2 = (int)y.terms.size();
    std::vector<Matrix> phi = lift_into_sequence(y, fr, phi0);
    auto c = solve_many(y.head, phi[n2 - 1] * fr.d[n2]);
    require(c.has_value(), "ext_class: lift does not land in the head copy of M");
    if (fr.length() > n2)
        require((*c * fr.d[n2 + 1]).is_zero(), "ext_class: cocycle condition failed");
    return ExtClassRep{n2, std::move(*c)};
}

/* Coboundary test: equivariant h : F_{n-1} -> M with h . d_n = cocycle.
   h is determined by its generator images and the equation only needs to
   hold on the generator columns of F_n, which turns the test into one
   linear solve. Returns the full h (rechecked) or nothing. */
inline std::optional<Matrix> is_zero_class(const ExtClassRep& rep, const FreeResolution& fr) {
    const GModule& m = fr.module;
    const Group& g = m.group();
    PrimeField f = m.field();
    int deg = rep.degree, n0 = g.order(), dm = m.dim();
    require(deg >= 1 && deg <= fr.length(), "is_zero_class: degree out of range");
    require(rep.cocycle.rows() == dm && rep.cocycle.cols() == fr.ranks[deg] * n0,
            "is_zero_class: cocycle shape");
    int rlo = fr.ranks[deg - 1], rhi = fr.ranks[deg];
    Matrix a(f, dm * rhi, dm * rlo);
    Matrix rhs(f, dm * rhi, 1);
    for (int jg = 0; jg < rhi; ++jg) {
        int col = jg * n0 + g.identity();
        for (int i = 0; i < rlo; ++i) {
            Matrix blk(f, dm, dm);
            bool nz = false;
            for (int e = 0; e < n0; ++e) {
                uint32_t cf = fr.d[deg].at(i * n0 + e, col);
                if (!cf) continue;
                blk = blk + m.action(e).scaled(cf);
                nz = true;
            }
            if (nz) a.set_block(jg * dm, i * dm, blk);
        }
        for (int v = 0; v < dm; ++v) rhs.at(jg * dm + v, 0) = rep.cocycle.at(v, col);
    }
    auto sol = solve_many(a, rhs);
    if (!sol) return std::nullopt;
    Matrix gens(f, dm, rlo);
    for (int i = 0; i < rlo; ++i)
        for (int v = 0; v < dm; ++v) gens.at(v, i) = sol->at(i * dm + v, 0);
    Matrix h = extend_to_module(fr.term(deg - 1), m, gens);
    require(h * fr.d[deg] == rep.cocycle, "is_zero_class: witness failed recheck");
    return h;
}

struct SerreWitness {
    int m = 0;
    std::vector<BocksteinDatum> data;  // rightmost factor first
    ExtClassRep cls;
    Matrix coboundary;
};

/* First vanishing product of Bockstein classes over a p-group, walking
   multisets of index-p subgroups in increasing length and lexicographically
   within a length. Non-elementary-abelian p-groups always have one at some
   m; the search reports honestly either way. */
inline std::optional<SerreWitness> serre_search(const GModule& m, int m_max) {
    const Group& g = m.group();
    PrimeField f = m.field();
    require(g.is_p_group(f.p), "serre_search: group is not a p-group in the module characteristic");
    require(m_max >= 1, "serre_search: m_max must be positive");
    auto data = bockstein_data(g, f.p);
    if (data.empty()) return std::nullopt;
    std::vector<YonedaSequence> base;
    base.reserve(data.size());
    for (const auto& bd : data) base.push_back(bockstein_sequence(bd, m));
    FreeResolution fr = materialize(resolve(m, 2 * m_max + 2, true));
    int nd = (int)data.size();
    for (int len = 1; len <= m_max; ++len) {
        std::vector<int> idx(len, 0);
        while (true) {
            std::vector<YonedaSequence> pieces;
            pieces.reserve(len);
            for (int t : idx) pieces.push_back(base[t]);
            ExtClassRep c = ext_class(splice(pieces), fr);
            if (auto h = is_zero_class(c, fr)) {
                std::vector<BocksteinDatum> chosen;
                for (int t : idx) chosen.push_back(data[t]);
                return SerreWitness{len, std::move(chosen), std::move(c), std::move(*h)};
            }
            int t = len - 1;
            while (t >= 0 && idx[t] == nd - 1) --t;
            if (t < 0) break;
            ++idx[t];
            for (int s = t + 1; s < len; ++s) idx[s] = idx[t];
        }
    }
    return std::nullopt;
}

/* One factor of a dead product, with everything the transport needs: the
   datum, the padding over L, and a free resolution over L of
   restrict(M) (+) padding, at least out_len + 2m - 1 long. */
struct TransportColumn {
    BocksteinDatum datum;
    GModule padding;
    FreeResolution column;
};

struct TransportResult {
    FreeResolution res;  // over G, resolving M (+) N
    GModule n_module;    // N, the image of the top interior differential
    int m = 0;
    std::vector<int> predicted;  // ranks the column formula predicts
    bool rank_formula_ok = false;
    std::optional<GrowthVerdict> verdict;
};

/* Turn a vanishing product of Bockstein classes into a free resolution of
   M (+) N over G out to degree out_len. The 2m-step spliced sequence is
   totalized against the induced column resolutions; on the total complex T
   the map w = head^{-1} . pi_{2m-1}, defined on Z = ker D_{2m-1}, extends
   to the whole free term exactly when the class vanishes (that solve IS the
   vanishing test, and failure is reported as such). Pairing the extension
   with the coordinate projection onto N = im D_{2m-1} gives an augmentation
   whose kernel is im D_{2m}, so shifting T by 2m-1 resolves M (+) N.

   Rank certificate: rank P_n = sum_i (d_i^{n+2(m-i)+1} + d_i^{n+2(m-i)}),
   d_i the rank sequence of the i-th column, 1-indexed from the rightmost
   factor. */
inline TransportResult transport_resolution(const GModule& m, const std::vector<TransportColumn>& cols,
                                            int out_len,
                                            const std::optional<ComplexityFunction>& f = std::nullopt) {
    require(!cols.empty(), "transport_resolution: no columns");
    require(out_len >= 0, "transport_resolution: negative length");
    const Group& g = m.group();
    PrimeField fld = m.field();
    int n0 = g.order(), mm = (int)cols.size(), n2 = 2 * mm;
    int t0 = n2 - 1, total_len = out_len + t0;

    std::vector<YonedaSequence> pieces;
    std::vector<FreeResolution> wcols;
    for (int i = 0; i < mm; ++i) {
        const TransportColumn& tc = cols[i];
        require(tc.column.length() >= total_len,
                "transport_resolution: column " + std::to_string(i) + " shorter than " +
                    std::to_string(total_len));
        GModule inner = restrict_module(m, tc.datum.l).direct_sum(tc.padding);
        require(same_module(tc.column.module, inner),
                "transport_resolution: column " + std::to_string(i) + " resolves the wrong module");
        pieces.push_back(bockstein_sequence(tc.datum, m, tc.padding));
        FreeResolution ind = induce_resolution(tc.datum.l, tc.column);
        wcols.push_back(ind);
        wcols.push_back(std::move(ind));
    }
    YonedaSequence y = splice(pieces);

    ModuleComplex c{y.terms, y.d};
    WallResult w = wall_totalize(c, wcols, total_len);
    std::string werr = verify_wall(w, c);
    require(werr.empty(), "transport_resolution: " + werr);

    const Matrix& dtop = w.total_d[t0];
    KernelBasis kb = kernel_basis_full(dtop);
    auto wz = solve_many(y.head, w.pi[t0] * kb.basis);
    require(wz.has_value(), "transport_resolution: pi does not land in the head copy");

    // extend w from Z to the whole free term: the vanishing test
    int rtop = w.total_ranks[t0], nz = kb.basis.cols(), dm = m.dim();
    Matrix a(fld, dm * nz, dm * rtop);
    Matrix rhs(fld, dm * nz, 1);
    for (int zc = 0; zc < nz; ++zc) {
        for (int i = 0; i < rtop; ++i) {
            Matrix blk(fld, dm, dm);
            bool nzf = false;
            for (int e = 0; e < n0; ++e) {
                uint32_t cf = kb.basis.at(i * n0 + e, zc);
                if (!cf) continue;
                blk = blk + m.action(e).scaled(cf);
                nzf = true;
            }
            if (nzf) a.set_block(zc * dm, i * dm, blk);
        }
        for (int v = 0; v < dm; ++v) rhs.at(zc * dm + v, 0) = wz->at(v, zc);
    }
    auto sol = solve_many(a, rhs);
    require(sol.has_value(),
            "transport_resolution: the product class does not vanish; construction inapplicable");
    Matrix wgen(fld, dm, rtop);
    for (int i = 0; i < rtop; ++i)
        for (int v = 0; v < dm; ++v) wgen.at(v, i) = sol->at(i * dm + v, 0);
    Matrix what = extend_to_module(FreeModule(g, fld, rtop), m, wgen);
    require(what * kb.basis == *wz, "transport_resolution: extension recheck failed");

    ImageBasis ib = image_basis(dtop);
    GModule nmod = submodule_as_gmodule(FreeModule(g, fld, w.total_ranks[t0 - 1]), ib.basis, ib.coords);
    Matrix qn = dtop.rows_subset(ib.coords);

    FreeResolution out(m.direct_sum(nmod));
    out.aug = Matrix::vstack(what, qn);
    out.d.push_back(Matrix(fld, 0, 0));
    for (int n = 0; n <= out_len; ++n) out.ranks.push_back(w.total_ranks[t0 + n]);
    for (int n = 1; n <= out_len; ++n) out.d.push_back(w.total_d[t0 + n]);
    out.verify_exact();

    TransportResult tr{std::move(out), std::move(nmod), mm, {}, false, std::nullopt};
    for (int n = 0; n <= out_len; ++n) {
        int sum = 0;
        for (int i = 1; i <= mm; ++i) {
            const std::vector<int>& dr = cols[i - 1].column.ranks;
            auto rk = [&](int j) { return (j >= 0 && j < (int)dr.size()) ? dr[j] : 0; };
            sum += rk(n + 2 * (mm - i) + 1) + rk(n + 2 * (mm - i));
        }
        tr.predicted.push_back(sum);
    }
    tr.rank_formula_ok = tr.predicted == tr.res.ranks;
    require(tr.rank_formula_ok, "transport_resolution: rank formula mismatch");
    if (f) tr.verdict = check_growth(tr.res.ranks, *f);
    return tr;
}

}  // namespace modres
