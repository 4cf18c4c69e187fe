#pragma once

#include "bockstein.hpp"

namespace modres {

/* Extend with zero ranks out to `len`; only valid once the resolution has
   gone exact (the kernel at the top must already vanish). verify_exact on
   the padded object certifies exactly that. */
inline void pad_resolution(FreeResolution& r, int len) {
    PrimeField f = r.module.field();
    int n0 = r.module.group().order();
    while (r.length() < len) {
        r.d.push_back(Matrix(f, r.ranks.back() * n0, 0));
        r.ranks.push_back(0);
    }
}

namespace detail {

inline long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1, y1, g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/* The tail summand of a module literally built as front (+) junk. */
inline GModule split_out_pad(const GModule& whole, const GModule& front) {
    int dm = front.dim(), dp = whole.dim() - dm;
    require(dp >= 0, "split_out_pad: front larger than the module");
    std::vector<Matrix> act;
    act.reserve(whole.group().order());
    for (int x = 0; x < whole.group().order(); ++x) act.push_back(whole.action(x).block(dm, dm, dp, dp));
    GModule pad(whole.group(), whole.field(), std::move(act), false);
    require(same_module(front.direct_sum(pad), whole), "split_out_pad: module is not the direct sum");
    return pad;
}

inline std::string ranks_str(const std::vector<int>& r) {
    std::string s = "(";
    for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

}  // namespace detail

/* Re-aim a resolution of W along a split pair q : W -> M, s : M -> W with
   q s = 1: [q ; coords of 1 - s q] is an isomorphism W -> M (+) ker q, so
   the same complex resolves the direct sum. */
struct SplitOff {
    FreeResolution res;
    GModule complement;
};

inline SplitOff reaim_split(const FreeResolution& resw, const GModule& m, const Matrix& q,
                            const Matrix& s) {
    const GModule& w = resw.module;
    require(q.rows() == m.dim() && q.cols() == w.dim() && s.rows() == w.dim() && s.cols() == m.dim(),
            "reaim_split: shape mismatch");
    require(q * s == Matrix::identity(m.field(), m.dim()), "reaim_split: q s != 1");
    require(is_equivariant(w, m, q) && is_equivariant(m, w, s), "reaim_split: maps not equivariant");
    KernelBasis kb = kernel_basis_full(q);
    GModule comp = submodule_as_gmodule(w, kb.basis, kb.free_cols);
    Matrix residual = (Matrix::identity(m.field(), w.dim()) - s * q) * resw.aug;
    FreeResolution out(m.direct_sum(comp));
    out.ranks = resw.ranks;
    out.d = resw.d;
    out.aug = Matrix::vstack(q * resw.aug, residual.rows_subset(kb.free_cols));
    out.verify_exact();
    return SplitOff{std::move(out), std::move(comp)};
}

/* One Sylow (or other) subgroup feeding the splitting: the padding lives
   over the subgroup and the column resolves res_S(M) (+) padding. */
struct SylowColumn {
    Subgroup sylow;
    GModule padding;
    FreeResolution column;
};

struct SplitResult {
    FreeResolution res;  // over G, of M (+) complement
    GModule complement;
    Matrix splitting;    // s : W -> ... (M -> W)
    Matrix retraction;   // q : W -> M with q s = 1
    std::vector<uint32_t> coefficients;  // reduced Bezout weight per column
    std::optional<GrowthVerdict> verdict;
};

namespace detail {

/* Shared assembly for the split pipelines: W = (+)_i Ind_{S_i}(res M (+)
   N_i), q = sum of transfer retractions (padding killed), s = weighted sum
   of transfer sections. The weights must satisfy sum_i a_i [G:S_i] = 1 in
   the field; q s = 1 is then certified literally and the direct sum of the
   induced resolutions re-aims onto M (+) ker q. */
inline SplitResult assemble_split(const GModule& m, const std::vector<SylowColumn>& cols,
                                  const std::vector<uint32_t>& a,
                                  const std::optional<ComplexityFunction>& f) {
    const Group& g = m.group();
    PrimeField fld = m.field();
    int dm = m.dim();
    std::vector<FreeResolution> inds;
    std::optional<GModule> w;
    std::optional<Matrix> q, s;
    int len = cols[0].column.length();
    for (size_t i = 0; i < cols.size(); ++i) {
        const SylowColumn& sc = cols[i];
        require(sc.sylow.parent() == g, "assemble_split: subgroup of a different group");
        require(sc.column.length() == len, "assemble_split: column lengths differ");
        GModule rm = restrict_module(m, sc.sylow);
        require(same_module(sc.column.module, rm.direct_sum(sc.padding)),
                "assemble_split: column " + std::to_string(i) + " resolves the wrong module");
        FreeResolution ind = induce_resolution(sc.sylow, sc.column);
        TransferMaps tm = transfer_maps(m, sc.sylow);
        int nc = sc.sylow.index(), dp = sc.padding.dim();
        Matrix shuf = induction_unshuffle(fld, nc, dm, dp);
        Matrix qi = Matrix::hstack(tm.from_induced, Matrix(fld, dm, nc * dp)) * shuf;
        Matrix si = shuf.transpose() * Matrix::vstack(tm.to_induced.scaled(a[i]), Matrix(fld, nc * dp, dm));
        w = w ? w->direct_sum(ind.module) : ind.module;
        q = q ? Matrix::hstack(*q, qi) : qi;
        s = s ? Matrix::vstack(*s, si) : si;
        inds.push_back(std::move(ind));
    }
    require(*q * *s == Matrix::identity(fld, dm), "assemble_split: splitting certificate failed");

    FreeResolution resw(*w);
    resw.d.push_back(Matrix(fld, 0, 0));
    for (int n = 0; n <= len; ++n) {
        int sum = 0;
        for (const auto& ind : inds) sum += ind.ranks[n];
        resw.ranks.push_back(sum);
    }
    std::optional<Matrix> aug;
    for (const auto& ind : inds) aug = aug ? Matrix::block_diag(*aug, ind.aug) : ind.aug;
    resw.aug = *aug;
    for (int n = 1; n <= len; ++n) {
        std::optional<Matrix> dn;
        for (const auto& ind : inds) dn = dn ? Matrix::block_diag(*dn, ind.d[n]) : ind.d[n];
        resw.d.push_back(*dn);
    }

    SplitOff off = reaim_split(resw, m, *q, *s);
    SplitResult out{std::move(off.res), std::move(off.complement), std::move(*s), std::move(*q), a,
                    std::nullopt};
    if (f) out.verdict = check_growth(out.res.ranks, *f);
    return out;
}

}  // namespace detail

/* Split M off (+)_p Ind_{S_p}(res M (+) N_p) using Bezout weights for the
   coprime indices [G:S_p], reduced into the field. Any subset of Sylow
   subgroups whose indices have field-invertible gcd works (a single Sylow
   at the characteristic prime is the common case). Ranks of the output are
   the pointwise sums of the induced column ranks. */
inline SplitResult psylow_split(const GModule& m, const std::vector<SylowColumn>& cols,
                                const std::optional<ComplexityFunction>& f = std::nullopt) {
    require(!cols.empty(), "psylow_split: no columns");
    const Group& g = m.group();
    int p0 = (int)m.field().p;
    std::vector<long long> idx;
    std::vector<uint32_t> primes;
    for (const auto& sc : cols) {
        int so = sc.sylow.order();
        require(so > 1, "psylow_split: trivial subgroup is not a Sylow subgroup here");
        uint32_t pr = 0;
        for (uint32_t d = 2; d <= (uint32_t)so; ++d)
            if (so % (int)d == 0) {
                pr = d;
                break;
            }
        int t = so;
        while (t % (int)pr == 0) t /= (int)pr;
        require(t == 1, "psylow_split: subgroup order is not a prime power");
        require((g.order() / so) % (int)pr != 0, "psylow_split: subgroup is not a full Sylow subgroup");
        for (uint32_t q : primes) require(q != pr, "psylow_split: repeated prime");
        primes.push_back(pr);
        idx.push_back(g.order() / so);
    }
    std::vector<long long> coef(cols.size());
    long long gg = idx[0];
    coef[0] = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        long long x, y, g2 = detail::egcd(gg, idx[i], x, y);
        for (size_t j = 0; j < i; ++j) coef[j] *= x;
        coef[i] = y;
        gg = g2;
    }
    require(gg % p0 != 0, "psylow_split: index gcd is not invertible in the field");
    PrimeField fld = m.field();
    uint32_t ginv = fld.inv((uint32_t)(((gg % p0) + p0) % p0));
    std::vector<uint32_t> a(cols.size());
    uint32_t total = 0;
    for (size_t i = 0; i < cols.size(); ++i) {
        a[i] = fld.mul((uint32_t)(((coef[i] % p0) + p0) % p0), ginv);
        total = fld.add(total, fld.mul(a[i], (uint32_t)(idx[i] % p0)));
    }
    require(total == 1, "psylow_split: Bezout reduction failed");
    return detail::assemble_split(m, cols, a, f);
}

/* Split M off Ind_H(res M (+) N) when [G:H] is invertible in the field,
   averaging over the cosets. H = G is the identity pipeline; H trivial in
   coprime characteristic yields a finite-length resolution. */
inline SplitResult invertible_index_descent(const GModule& m, const Subgroup& h,
                                            const FreeResolution& column,
                                            const std::optional<ComplexityFunction>& f = std::nullopt) {
    PrimeField fld = m.field();
    int idx = h.index();
    require(idx % (int)fld.p != 0, "invertible_index_descent: index not invertible");
    GModule rm = restrict_module(m, h);
    GModule pad = detail::split_out_pad(column.module, rm);
    std::vector<uint32_t> a{fld.inv((uint32_t)(idx % (int)fld.p))};
    return detail::assemble_split(m, {SylowColumn{h, std::move(pad), column}}, a, f);
}

namespace detail {

/* The constructive transfer chain, one group at a time:
     - trivial group / elementary abelian: direct (minimal) resolution;
     - other p-groups: find a dead product of Bockstein classes, resolve the
       index-p subgroups recursively, transport;
     - order prime to the characteristic: averaging splits, finite length;
     - anything else: recurse into the Sylow subgroup and split.
   Returns a resolution of (the input module) (+) junk, the junk accumulated
   from the transports and splittings along the way. */
inline FreeResolution main_chain(const GModule& m, int out_len, int m_max,
                                 std::vector<std::string>& log, const std::string& indent) {
    const Group& k = m.group();
    PrimeField f = m.field();
    uint32_t p0 = f.p;
    int n0 = k.order();
    if (n0 == 1) {
        FreeResolution r(m);
        r.ranks.push_back(m.dim());
        r.aug = Matrix::identity(f, m.dim());
        r.d.push_back(Matrix(f, 0, 0));
        pad_resolution(r, out_len);
        r.verify_exact();
        log.push_back(indent + "trivial group: the module is free");
        return r;
    }
    if (k.is_p_group(p0)) {
        if (is_elementary_abelian(k, p0)) {
            FreeResolution r = materialize(resolve(m, out_len, true));
            log.push_back(indent + "elementary abelian of order " + std::to_string(n0) +
                          ": minimal resolution, ranks " + ranks_str(r.ranks));
            return r;
        }
        auto wit = serre_search(m, m_max);
        require(wit.has_value(), "main chain: no vanishing product up to " + std::to_string(m_max) +
                                     " over a group of order " + std::to_string(n0));
        int mm = wit->m;
        log.push_back(indent + "p-group of order " + std::to_string(n0) + ": product of " +
                      std::to_string(mm) + " Bockstein classes dies; descending to index p");
        std::vector<TransportColumn> cols;
        int child_len = out_len + 2 * mm - 1;
        for (const BocksteinDatum& bd : wit->data) {
            GModule rm = restrict_module(m, bd.l);
            FreeResolution child = main_chain(rm, child_len, m_max, log, indent + "  ");
            GModule pad = split_out_pad(child.module, rm);
            cols.push_back(TransportColumn{bd, std::move(pad), std::move(child)});
        }
        TransportResult tr = transport_resolution(m, cols, out_len);
        log.push_back(indent + "transported: ranks " + ranks_str(tr.res.ranks));
        return std::move(tr.res);
    }
    if (n0 % (int)p0 != 0) {
        Subgroup triv = trivial_subgroup(k);
        GModule rm = restrict_module(m, triv);
        FreeResolution base(rm);
        base.ranks.push_back(rm.dim());
        base.aug = Matrix::identity(f, rm.dim());
        base.d.push_back(Matrix(f, 0, 0));
        SplitResult sp = invertible_index_descent(m, triv, base);
        pad_resolution(sp.res, out_len);
        sp.res.verify_exact();
        log.push_back(indent + "order prime to the characteristic: averaging splits, finite length");
        return std::move(sp.res);
    }
    Subgroup s = sylow_subgroup(k, p0);
    GModule rm = restrict_module(m, s);
    FreeResolution child = main_chain(rm, out_len, m_max, log, indent + "  ");
    GModule pad = split_out_pad(child.module, rm);
    SplitResult sp = psylow_split(m, {SylowColumn{s, std::move(pad), std::move(child)}});
    log.push_back(indent + "Sylow splitting at index " + std::to_string(s.index()) + ": ranks " +
                  ranks_str(sp.res.ranks));
    return std::move(sp.res);
}

}  // namespace detail

struct TransferStep {
    std::vector<int> subgroup;
    std::string strategy;
    std::vector<int> ranks;
    GrowthVerdict verdict;
};

struct TransferReport {
    std::vector<TransferStep> per_subgroup;  // maximal elementary abelian inputs
    std::vector<std::string> log;            // how the G-side resolution was built
    FreeResolution res;                      // over G, resolves M (+) carried junk
    GrowthVerdict combined;
};

/* Verify a growth bound for M over G constructively: certify it over every
   maximal elementary abelian subgroup by direct minimal resolutions, then
   build a resolution over G itself through the transfer chain and test the
   same bound on its ranks. */
inline TransferReport main3_verify(const GModule& m, const ComplexityFunction& f, int out_len,
                                   int m_max = 4) {
    require(out_len >= 1, "main3_verify: need a positive length");
    std::vector<TransferStep> steps;
    for (const Subgroup& e : maximal_elementary_abelian_subgroups(m.group(), m.field().p)) {
        FreeResolution r = materialize(resolve(restrict_module(m, e), out_len, true));
        GrowthVerdict v = check_growth(r.ranks, f);
        steps.push_back(TransferStep{e.elements(), "minimal-resolution", r.ranks, std::move(v)});
    }
    std::vector<std::string> log;
    FreeResolution res = detail::main_chain(m, out_len, m_max, log, "");
    GrowthVerdict combined = check_growth(res.ranks, f);
    return TransferReport{std::move(steps), std::move(log), std::move(res), std::move(combined)};
}

/* Fitted degree + 1, with finite length scored as complexity zero. Minimal
   resolutions only: the rank sequence must be the invariant one. */
inline int complexity_from_ranks(const std::vector<int>& ranks) {
    require(!ranks.empty(), "complexity_from_ranks: empty prefix");
    if (ranks.back() == 0) return 0;
    return fitted_degree(ranks) + 1;
}

struct AlperinStep {
    std::vector<int> subgroup;
    std::vector<int> ranks;
    int complexity = 0;
};

struct AlperinReport {
    std::vector<int> g_ranks;
    int g_complexity = 0;
    std::vector<AlperinStep> per_e;
    int max_e_complexity = 0;
    bool equal = false;
};

/* Compare the growth rate over a p-group with the maximum over its maximal
   elementary abelian subgroups, by fitting degrees to minimal-resolution
   rank prefixes on both sides. */
inline AlperinReport alperin_evens_check(const GModule& m, int n_prefix) {
    const Group& g = m.group();
    PrimeField f = m.field();
    require(g.is_p_group(f.p), "alperin_evens_check: want a p-group in the module characteristic");
    AlperinReport rep;
    rep.g_ranks = resolve(m, n_prefix, true).ranks;
    rep.g_complexity = complexity_from_ranks(rep.g_ranks);
    for (const Subgroup& e : maximal_elementary_abelian_subgroups(g, f.p)) {
        Resolution r = resolve(restrict_module(m, e), n_prefix, true);
        AlperinStep st{e.elements(), r.ranks, complexity_from_ranks(r.ranks)};
        rep.max_e_complexity = std::max(rep.max_e_complexity, st.complexity);
        rep.per_e.push_back(std::move(st));
    }
    rep.equal = rep.g_complexity == rep.max_e_complexity;
    return rep;
}

struct ChouinardReport {
    bool projective_g = false;
    std::vector<std::pair<std::vector<int>, bool>> per_e;  // subgroup elements -> projective?
    bool all_e = false;
    bool agree = false;
};

/* Projectivity over G against projectivity over every elementary abelian
   subgroup, both sides by the averaging-splitting criterion. The two are
   equivalent; disagreement would mean a bug and throws. */
inline ChouinardReport chouinard_projectivity_check(const GModule& m) {
    ChouinardReport rep;
    rep.projective_g = is_projective(m).projective;
    rep.all_e = true;
    for (const auto& [e, r] : elementary_abelian_subgroups(m.group(), m.field().p)) {
        bool pe = is_projective(restrict_module(m, e)).projective;
        rep.all_e = rep.all_e && pe;
        rep.per_e.push_back({e.elements(), pe});
    }
    rep.agree = rep.projective_g == rep.all_e;
    require(rep.agree, "chouinard_projectivity_check: criteria disagree");
    return rep;
}

struct VfcdResult {
    int r_max = 0;
    GrowthVerdict verdict;
    FreeResolution res;
    std::vector<std::string> log;
};

/* Bound the growth by n^(r_max - 1), r_max the largest elementary abelian
   p-rank: build the chain resolution and test. r_max = 0 (order prime to p)
   collapses to a finite-length verdict. */
inline VfcdResult vfcd_bound(const GModule& m, int out_len, int m_max = 4) {
    int r_max = 0;
    for (const auto& [e, r] : elementary_abelian_subgroups(m.group(), m.field().p))
        r_max = std::max(r_max, r);
    std::vector<std::string> log;
    FreeResolution res = detail::main_chain(m, out_len, m_max, log, "");
    GrowthVerdict v = r_max == 0 ? check_finite_length(res.ranks)
                                 : check_growth(res.ranks, ComplexityFunction::polynomial(r_max - 1));
    return VfcdResult{r_max, std::move(v), std::move(res), std::move(log)};
}

}  // namespace modres
