#pragma once

#include "wall.hpp"

namespace modres {

/* 0 -> M1 -> M2 -> M3 -> 0, with maps validated on construction via check():
   equivariance, inj injective, surj surjective, surj o inj = 0 and the rank
   count that makes the middle exact. */
struct ShortExactSequence {
    GModule m1, m2, m3;
    Matrix inj;   // M1 -> M2
    Matrix surj;  // M2 -> M3

    void check() const {
        require(m1.group() == m2.group() && m2.group() == m3.group(), "ses: group mismatch");
        require(inj.rows() == m2.dim() && inj.cols() == m1.dim(), "ses: inj shape");
        require(surj.rows() == m3.dim() && surj.cols() == m2.dim(), "ses: surj shape");
        require(is_equivariant(m1, m2, inj), "ses: inj not equivariant");
        require(is_equivariant(m2, m3, surj), "ses: surj not equivariant");
        require(rank(inj) == m1.dim(), "ses: inj not injective");
        require(rank(surj) == m3.dim(), "ses: surj not surjective");
        require((surj * inj).is_zero(), "ses: surj o inj != 0");
        require(m2.dim() == m1.dim() + m3.dim(), "ses: middle dimension is off");
    }
};

/* Horseshoe: from resolutions of the ends, a resolution of the middle with
   F_n = P1_n (+) P3_n. The P3-to-P1 correction gamma_n and the augmentation
   lift s are solved on free generators; solvability is exactness of the
   inputs and is certified by the solver. */
inline FreeResolution horseshoe(const ShortExactSequence& ses, const FreeResolution& p1,
                                const FreeResolution& p3, int out_len) {
    require(out_len <= p1.length() && out_len <= p3.length(), "horseshoe: resolutions too short");
    PrimeField f = ses.m2.field();
    FreeResolution out(ses.m2);
    for (int n = 0; n <= out_len; ++n) out.ranks.push_back(p1.ranks[n] + p3.ranks[n]);

    // s : P3_0 -> M2 with surj o s = aug3, solved on generators (the target
    // is M2 itself, not a free module, so extend_to_module does the extension)
    Matrix bg = p3.aug.cols_subset(free_generator_columns(p3.term(0)));
    auto sg = solve_many(ses.surj, bg);
    require(sg.has_value(), "horseshoe: cannot lift the augmentation of P3");
    Matrix s0 = extend_to_module(p3.term(0), ses.m2, *sg);

    out.aug = Matrix::hstack(ses.inj * p1.aug, s0);
    out.d.push_back(Matrix(f, 0, 0));

    Matrix prev_gamma(f, 0, 0);
    for (int n = 1; n <= out_len; ++n) {
        Matrix rhs = n == 1 ? (s0 * p3.d[1]).negated() : (prev_gamma * p3.d[n]).negated();
        std::optional<Matrix> gamma;
        if (n == 1) {
            // solve (inj o aug1) gamma = rhs; target of the solve is P1_0
            Matrix a = ses.inj * p1.aug;
            Matrix bgn = rhs.cols_subset(free_generator_columns(p3.term(1)));
            auto xg = solve_many(a, bgn);
            require(xg.has_value(), "horseshoe: gamma_1 unsolvable");
            gamma = extend_free(p3.term(1), p1.term(0), *xg);
        } else {
            gamma = equivariant_solve(p1.d[n - 1], p3.term(n), p1.term(n - 1), rhs);
            require(gamma.has_value(), "horseshoe: gamma_" + std::to_string(n) + " unsolvable");
        }
        int r1 = p1.ranks[n - 1], r3p = p3.ranks[n - 1];
        int c1 = p1.ranks[n], c3 = p3.ranks[n];
        int n0 = ses.m2.group().order();
        Matrix d(f, (r1 + r3p) * n0, (c1 + c3) * n0);
        d.set_block(0, 0, p1.d[n]);
        d.set_block(0, c1 * n0, *gamma);
        d.set_block(r1 * n0, c1 * n0, p3.d[n]);
        out.d.push_back(std::move(d));
        prev_gamma = *gamma;
    }
    return out;
}

/* Resolution of M3 from resolutions of M1 and M2: totalize the two-term
   complex M2 <- M1. Its homology is M3 in degree 0 and nothing else, so the
   Wall total complex is a resolution of M3 with the augmentation surj o pi_0.
   Ranks: T_n = P2_n (+) P1_{n-1}. */
inline FreeResolution resolve_quotient(const ShortExactSequence& ses, const FreeResolution& p1,
                                       const FreeResolution& p2, int out_len) {
    ModuleComplex c{{ses.m2, ses.m1}, {Matrix(ses.m2.field(), 0, 0), ses.inj}};
    auto w = wall_totalize(c, {p2, p1}, out_len);
    FreeResolution out(ses.m3);
    out.ranks = w.total_ranks;
    out.d = std::move(w.total_d);
    out.aug = ses.surj * w.pi[0];
    return out;
}

/* Resolution of M1 from resolutions of M2 and M3: totalize M3 <- M2, whose
   only homology is M1 in degree 1. The total complex has a surjective D_1;
   split it with an equivariant section s (solvable since T_0 is free) and
   peel the bottom off. Over a p-group, ker D_1 is projective hence free, and
   its minimal cover is an isomorphism giving F_0 = ker D_1 with the original
   ranks shifted by one. In general ker D_1 is only projective; then the
   resolution is re-glued as F_0 = T_1, F_1 = T_2 (+) T_0 with
   (x, t) -> D_2 x + s t, and F_n = T_{n+1} beyond. */
inline FreeResolution resolve_sub(const ShortExactSequence& ses, const FreeResolution& p2,
                                  const FreeResolution& p3, int out_len) {
    PrimeField f = ses.m1.field();
    const Group& g = ses.m1.group();
    int n0 = g.order();
    ModuleComplex c{{ses.m3, ses.m2}, {Matrix(f, 0, 0), ses.surj}};
    auto w = wall_totalize(c, {p3, p2}, out_len + 1);

    FreeModule t0 = FreeModule(g, f, w.total_ranks[0]);
    FreeModule t1 = FreeModule(g, f, w.total_ranks[1]);
    auto s = equivariant_solve(w.total_d[1], t0, t1, Matrix::identity(f, t0.dim()));
    require(s.has_value(), "resolve_sub: D_1 does not split (total complex not exact at 0)");

    // ker D_1 with echelon coordinates; pi_1 restricted gives the map to M1
    auto ker = kernel_basis_full(w.total_d[1]);
    int wdim = ker.basis.cols();
    Matrix pi_restr = (w.pi[1] * ker.basis);  // dim M2 x wdim, lands in inj(M1)
    auto to_m1 = solve_many(ses.inj, pi_restr);
    require(to_m1.has_value(), "resolve_sub: pi_1(ker D_1) escapes M1");

    if (g.is_p_group(f.p)) {
        GModule kmod = submodule_as_gmodule(t1, ker.basis, ker.free_cols);
        Resolution cover = resolve(kmod, 0, true);
        require(cover.ranks[0] * n0 == wdim,
                "resolve_sub: projective kernel is not free over a p-group (impossible)");
        const Matrix& c0 = cover.augmentation();  // wdim x dim F_0, an iso
        FreeResolution out(ses.m1);
        out.ranks.push_back(cover.ranks[0]);
        for (int n = 1; n <= out_len; ++n) out.ranks.push_back(w.total_ranks[n + 1]);
        out.aug = *to_m1 * c0;
        out.d.push_back(Matrix(f, 0, 0));
        if (out_len >= 1) {
            // D_2 in kernel coordinates, then through the inverse of the cover
            Matrix d2k = w.total_d[2].rows_subset(ker.free_cols);
            auto d1 = solve_many(c0, d2k);
            require(d1.has_value(), "resolve_sub: cover inversion failed");
            out.d.push_back(*d1);
        }
        for (int n = 2; n <= out_len; ++n) out.d.push_back(w.total_d[n + 1]);
        return out;
    }

    // general case: re-glue with T_0 absorbed into degree 1
    FreeResolution out(ses.m1);
    out.ranks.push_back(w.total_ranks[1]);
    if (out_len >= 1) out.ranks.push_back(w.total_ranks[2] + w.total_ranks[0]);
    for (int n = 2; n <= out_len; ++n) out.ranks.push_back(w.total_ranks[n + 1]);
    // aug = to_m1 o (projection of T_1 onto ker D_1 along s(T_0)), as a map on T_1
    Matrix e = *s * w.total_d[1];  // idempotent with image s(T_0)
    Matrix proj = Matrix::identity(f, t1.dim()) - e;
    // coordinates of proj(x) in the kernel basis = row restriction
    out.aug = *to_m1 * proj.rows_subset(ker.free_cols);
    out.d.push_back(Matrix(f, 0, 0));
    if (out_len >= 1) {
        Matrix d1 = Matrix::hstack(w.total_d[2], *s);
        out.d.push_back(std::move(d1));
    }
    if (out_len >= 2) {
        Matrix d2(f, out.ranks[1] * n0, w.total_ranks[3] * n0);
        d2.set_block(0, 0, w.total_d[3]);
        out.d.push_back(std::move(d2));
    }
    for (int n = 3; n <= out_len; ++n) out.d.push_back(w.total_d[n + 1]);
    return out;
}

enum class SesSlot { M1, M2, M3 };

/* Complexity transfer: resolutions of two members of a short exact sequence
   give one of the third, with ranks controlled by sums of the input ranks. */
inline FreeResolution two_of_three(const ShortExactSequence& ses, SesSlot missing,
                                   const FreeResolution& a, const FreeResolution& b, int out_len) {
    switch (missing) {
        case SesSlot::M2: return horseshoe(ses, a, b, out_len);        // a = P1, b = P3
        case SesSlot::M3: return resolve_quotient(ses, a, b, out_len); // a = P1, b = P2
        default: return resolve_sub(ses, a, b, out_len);               // a = P2, b = P3
    }
}

}  // namespace modres
