#pragma once

#include <cmath>
#include <optional>

#include "gmodule.hpp"

namespace modres {

/* ---- growth bookkeeping ------------------------------------------------ */

/* The comparison functions we measure rank growth against. All are positive
   and nondecreasing on n >= 0 (the log is shifted to log(n+2) for that). */
struct ComplexityFunction {
    enum class Family { Polynomial, LogShift, Exponential };
    Family family = Family::Polynomial;
    int a = 0;  // degree, for Polynomial

    static ComplexityFunction polynomial(int a) {
        require(a >= 0, "ComplexityFunction: degree >= 0");
        return {Family::Polynomial, a};
    }
    static ComplexityFunction log_shift() { return {Family::LogShift, 0}; }
    static ComplexityFunction exponential() { return {Family::Exponential, 0}; }

    long double eval(int n) const {
        switch (family) {
            case Family::Polynomial: return powl((long double)(n + 1), a);
            case Family::LogShift: return logl((long double)(n + 2));
            default: return expl((long double)n);
        }
    }
    std::string str() const {
        switch (family) {
            case Family::Polynomial: return "(n+1)^" + std::to_string(a);
            case Family::LogShift: return "log(n+2)";
            default: return "exp(n)";
        }
    }
};

struct GrowthVerdict {
    enum class Kind { BoundedByF, FiniteLength };
    Kind kind = Kind::BoundedByF;
    bool holds = false;
    Fraction witness;        // BoundedByF: the constant C; FiniteLength: last degree with a nonzero term
    std::vector<int> prefix; // the rank sequence that was examined
};

/* Bound the prefix by C * f(n). Without a cap the verdict reports the least
   such C it can certify (exact for polynomial f; for the transcendental
   families the max ratio is rounded up at denominator 10^6). With a cap the
   verdict states whether the given C works on the prefix. */
inline GrowthVerdict check_growth(const std::vector<int>& ranks, const ComplexityFunction& f,
                                  std::optional<Fraction> cap = std::nullopt) {
    require(!ranks.empty(), "check_growth: empty prefix");
    GrowthVerdict v;
    v.kind = GrowthVerdict::Kind::BoundedByF;
    v.prefix = ranks;
    if (f.family == ComplexityFunction::Family::Polynomial) {
        Fraction best(0, 1);
        for (int n = 0; n < (int)ranks.size(); ++n) {
            long long den = 1;
            for (int i = 0; i < f.a; ++i) {
                require(den <= (long long)4e17 / (n + 1), "check_growth: f(n) overflow");
                den *= (n + 1);
            }
            Fraction r((long long)ranks[n], den);
            if (best < r) best = r;
        }
        if (cap) {
            v.witness = *cap;
            v.holds = best <= *cap;
        } else {
            v.witness = best;
            v.holds = true;
        }
        return v;
    }
    long double mx = 0;
    for (int n = 0; n < (int)ranks.size(); ++n) mx = std::max(mx, (long double)ranks[n] / f.eval(n));
    long long scaled = (long long)ceill(mx * 1000000.0L);
    Fraction best(scaled, 1000000);
    if (cap) {
        v.witness = *cap;
        v.holds = best <= *cap;
    } else {
        v.witness = best;
        v.holds = true;
    }
    return v;
}

inline GrowthVerdict check_finite_length(const std::vector<int>& ranks) {
    require(!ranks.empty(), "check_finite_length: empty prefix");
    GrowthVerdict v;
    v.kind = GrowthVerdict::Kind::FiniteLength;
    v.prefix = ranks;
    v.holds = ranks.back() == 0;
    int last = -1;
    for (int n = 0; n < (int)ranks.size(); ++n)
        if (ranks[n] > 0) last = n;
    v.witness = Fraction(last < 0 ? 0 : last, 1);
    return v;
}

/* Degree of the polynomial a rank sequence eventually follows. Exact finite
   differences: the smallest k whose k-th difference sequence has a constant
   tail (>= 3 equal trailing terms). Bounded-but-periodic tails (they do
   occur: period-4 rank patterns for instance) are detected separately and
   count as degree 0. Inconclusive data is an error, never a guess. */
inline int fitted_degree(const std::vector<int>& ranks, int max_degree = 8) {
    require((int)ranks.size() >= 5, "fitted_degree: need at least 5 terms");
    std::vector<long long> cur(ranks.begin(), ranks.end());
    for (int k = 0; k <= max_degree; ++k) {
        if ((int)cur.size() >= 3) {
            size_t m = cur.size();
            if (cur[m - 1] == cur[m - 2] && cur[m - 2] == cur[m - 3]) {
                if (cur[m - 1] == 0 && k > 0) {
                    /* a zero tail at level k means level k-1 was already
                       constant on a shorter tail; treat as degree k-1 */
                    return k - 1;
                }
                return k;
            }
        }
        std::vector<long long> nxt;
        for (size_t i = 1; i < cur.size(); ++i) nxt.push_back(cur[i] - cur[i - 1]);
        cur = std::move(nxt);
    }
    // periodic tail: smallest period matching on (up to) the last two periods
    int n = (int)ranks.size();
    for (int q = 2; q <= n / 2; ++q) {
        bool ok = true;
        for (int i = std::max(0, n - 3 * q); i + q < n && ok; ++i) ok = ranks[i] == ranks[i + q];
        if (ok) return 0;
    }
    throw Error("fitted_degree: sequence does not stabilize; need a longer prefix");
}

/* ---- resolutions -------------------------------------------------------- */

/* Free resolution ... -> F_1 -> F_0 -> M -> 0 built layer by layer. The
   n-th syzygy Omega_n = ker(F_{n-1} -> Omega_{n-1}) is held as a basis in
   the coordinates of F_{n-1}; thanks to the echelon structure of kernel
   bases, the coordinate of any vector of Omega_n is just its restriction to
   the rows omega_coords[n]. All column reductions happen at size
   dim Omega_n, never at ambient size, and the ambient differentials are only
   materialized on demand.

   Minimal mode picks the new generators as a basis of Omega_n modulo
   span{(g-1)v}; over a p-group in characteristic p that span is exactly the
   radical, so the covers are projective covers and the ranks are the minimal
   ones (surjectivity is Nakayama, and is asserted via ranks anyway). Minimal
   mode therefore insists on a p-group. Generic mode takes every kernel basis
   vector as a generator.

   Every layer asserts rank(eps_n) = dim Omega_n; together with
   eps_n * incl_{n+1} = 0 (kernel columns by construction) this certifies
   exactness of the materialized complex. */
class Resolution {
public:
    GModule module;
    bool minimal = false;
    std::vector<int> ranks;                    // rank of F_n, n = 0..length
    std::vector<Matrix> eps;                   // eps[0]: M-coords; eps[n>=1]: Omega_n-coords
    std::vector<Matrix> incl;                  // incl[n>=1]: F_{n-1}-coords x dim Omega_n ([0] dummy)
    std::vector<std::vector<int>> omega_coords;
    std::vector<int> omega_dims;               // dim Omega_n ([0] = dim M)

    Resolution(GModule m, bool min) : module(std::move(m)), minimal(min) {
        cache_ = std::make_shared<std::vector<std::optional<Matrix>>>();
    }

    const Group& group() const { return module.group(); }
    PrimeField field() const { return module.field(); }
    int length() const { return (int)ranks.size() - 1; }
    FreeModule term(int n) const {
        require(n >= 0 && n <= length(), "Resolution::term: out of range");
        return FreeModule(group(), field(), ranks[n]);
    }

    /* eps_0 : F_0 -> M. */
    const Matrix& augmentation() const { return eps[0]; }

    /* d_n : F_n -> F_{n-1} in ambient coordinates, n >= 1. Cached. */
    const Matrix& differential(int n) const {
        require(n >= 1 && n <= length(), "Resolution::differential: out of range");
        if (cache_->size() < (size_t)length() + 1) cache_->resize(length() + 1);
        auto& slot = (*cache_)[n];
        if (!slot) slot = incl[n] * eps[n];
        return *slot;
    }

private:
    std::shared_ptr<std::vector<std::optional<Matrix>>> cache_;
};

namespace detail {

/* Coordinates (column indices of a kernel-type basis B) whose unit vectors
   complete span(R) to the whole space: continue the elimination of [R | I]
   and keep the pivots landing in the I part. */
inline std::vector<int> complement_coords(const Matrix& r) {
    Matrix ri = Matrix::hstack(r, Matrix::identity(r.field(), r.rows()));
    auto rr = rref(ri);
    std::vector<int> out;
    for (int pc : rr.pivots)
        if (pc >= r.cols()) out.push_back(pc - r.cols());
    return out;
}

}  // namespace detail

inline Resolution resolve(const GModule& m, int length, bool minimal = true) {
    require(length >= 0, "resolve: negative length");
    PrimeField f = m.field();
    const Group& g = m.group();
    if (minimal)
        require(g.is_p_group(f.p),
                "resolve: minimal resolutions are only computed over p-groups in characteristic p");
    Resolution res(m, minimal);
    res.omega_dims.push_back(m.dim());

    // degree 0 cover of M itself
    std::vector<int> gen_idx;
    if (minimal) {
        std::vector<Matrix> radcols;
        for (int x : g.generators()) radcols.push_back(m.action(x) - Matrix::identity(f, m.dim()));
        Matrix rad = radcols.empty() ? Matrix(f, m.dim(), 0) : radcols[0];
        for (size_t i = 1; i < radcols.size(); ++i) rad = Matrix::hstack(rad, radcols[i]);
        gen_idx = detail::complement_coords(rad);
    } else {
        for (int i = 0; i < m.dim(); ++i) gen_idx.push_back(i);
    }
    res.ranks.push_back((int)gen_idx.size());
    FreeModule f0 = res.term(0);
    Matrix gen_images = Matrix::identity(f, m.dim()).cols_subset(gen_idx);
    res.eps.push_back(extend_to_module(f0, m, gen_images));
    res.incl.push_back(Matrix(f, 0, 0));
    res.omega_coords.push_back({});

    for (int n = 1; n <= length; ++n) {
        const Matrix& prev = res.eps[n - 1];
        auto ker = kernel_basis_full(prev);
        require(prev.cols() - ker.basis.cols() == res.omega_dims[n - 1],
                "resolve: cover at degree " + std::to_string(n - 1) + " is not surjective");
        int w = ker.basis.cols();
        res.omega_dims.push_back(w);
        res.incl.push_back(ker.basis);
        res.omega_coords.push_back(ker.free_cols);
        if (w == 0) {
            res.ranks.push_back(0);
            res.eps.push_back(Matrix(f, 0, 0));
            continue;
        }
        FreeModule amb = res.term(n - 1);

        std::vector<int> gens;
        if (minimal) {
            // span{(g-1)b_j} in Omega_n coordinates
            Matrix rad(f, w, (int)g.generators().size() * w);
            int c0 = 0;
            for (int x : g.generators()) {
                Matrix moved = amb.act(x, ker.basis) - ker.basis;
                for (int j = 0; j < w; ++j)
                    for (int i = 0; i < w; ++i) rad.at(i, c0 + j) = moved.at(ker.free_cols[i], j);
                c0 += w;
            }
            gens = detail::complement_coords(rad);
        } else {
            gens.resize(w);
            for (int i = 0; i < w; ++i) gens[i] = i;
        }
        int r = (int)gens.size();
        res.ranks.push_back(r);

        // eps_n in Omega_n coordinates: column (i,h) = (h . w_i) restricted
        Matrix epsn(f, w, r * g.order());
        for (int i = 0; i < r; ++i) {
            Matrix wcol(f, amb.dim(), 1);
            for (int row = 0; row < amb.dim(); ++row) wcol.at(row, 0) = ker.basis.at(row, gens[i]);
            for (int h = 0; h < g.order(); ++h) {
                Matrix moved = amb.act(h, wcol);
                int col = i * g.order() + h;
                for (int rr2 = 0; rr2 < w; ++rr2) epsn.at(rr2, col) = moved.at(ker.free_cols[rr2], 0);
            }
        }
        res.eps.push_back(std::move(epsn));
    }
    /* The loop certified surjectivity of layers 0..length-1 as a byproduct of
       the kernel computations; the top layer still needs its own rank check. */
    const Matrix& top = res.eps.back();
    if (top.rows() > 0)
        require(rank(top) == res.omega_dims.back(),
                "resolve: cover at degree " + std::to_string(length) + " is not surjective");
    return res;
}

/* Explicitly materialized free resolution; the container the gluing
   constructions build into. d[n] : F_n -> F_{n-1} for n >= 1 (d[0] is a
   dummy), aug : F_0 -> M. */
struct FreeResolution {
    GModule module;
    std::vector<int> ranks;
    std::vector<Matrix> d;
    Matrix aug;

    FreeResolution(GModule m) : module(std::move(m)), aug(module.field(), 0, 0) {}

    int length() const { return (int)ranks.size() - 1; }
    FreeModule term(int n) const { return FreeModule(module.group(), module.field(), ranks[n]); }

    /* Complex + exactness certificate, by exact rank arithmetic:
       aug surjective, aug d_1 = 0 with rank d_1 = dim F_0 - dim M, and
       d_n d_{n+1} = 0 with rank d_{n+1} = dim F_n - rank d_n. The top
       differential only gets the complex property. Throws on failure. */
    void verify_exact() const {
        int n0 = module.group().order();
        require(d.size() == ranks.size(), "FreeResolution: d/ranks size mismatch");
        require(aug.rows() == module.dim() && aug.cols() == ranks[0] * n0,
                "FreeResolution: augmentation shape");
        require(rank(aug) == module.dim(), "FreeResolution: augmentation not surjective");
        int prev_rank = rank(aug);
        int prev_dim = ranks[0] * n0;
        const Matrix* prev_map = &aug;
        for (int n = 1; n <= length(); ++n) {
            require(d[n].rows() == ranks[n - 1] * n0 && d[n].cols() == ranks[n] * n0,
                    "FreeResolution: differential shape at " + std::to_string(n));
            require((*prev_map * d[n]).is_zero(),
                    "FreeResolution: not a complex at degree " + std::to_string(n));
            int rk = rank(d[n]);
            require(rk == prev_dim - prev_rank,
                    "FreeResolution: homology at degree " + std::to_string(n - 1));
            prev_rank = rk;
            prev_dim = ranks[n] * n0;
            prev_map = &d[n];
        }
    }

    /* Equivariance of every map, against materialized actions. Quadratic in
       the dimensions; meant for tests and certificates, not inner loops. */
    void verify_equivariant() const {
        GModule f0 = term(0).materialize();
        require(is_equivariant(f0, module, aug), "FreeResolution: augmentation not equivariant");
        for (int n = 1; n <= length(); ++n) {
            GModule fn = term(n).materialize();
            GModule fp = term(n - 1).materialize();
            require(is_equivariant(fn, fp, d[n]),
                    "FreeResolution: differential " + std::to_string(n) + " not equivariant");
        }
    }
};

inline FreeResolution materialize(const Resolution& r) {
    FreeResolution out(r.module);
    out.ranks = r.ranks;
    out.aug = r.augmentation();
    out.d.push_back(Matrix(r.field(), 0, 0));
    for (int n = 1; n <= r.length(); ++n) out.d.push_back(r.differential(n));
    return out;
}

/* Induce a free resolution along S <= G. Ind kS^r = kG^r via t_j (x) e_{r,h}
   -> e_{r, t_j h}, so each induced map is determined by the old generator
   column with subgroup elements relabelled into G (the identity represents
   the coset of S itself, so generators stay generators). Induction of free
   modules is exact, which verify_exact can certify after the fact. */
inline FreeResolution induce_resolution(const Subgroup& s, const FreeResolution& q) {
    const Group& g = s.parent();
    auto sg = s.to_group();
    require(q.module.group() == sg.group, "induce_resolution: resolution not over the subgroup");
    PrimeField f = q.module.field();
    auto cosets = s.left_cosets();
    int ns = sg.group.order(), n0 = g.order(), dw = q.module.dim();
    int c0 = cosets.coset_of[g.identity()];
    require(cosets.reps[c0] == g.identity(), "induce_resolution: identity transversal convention");

    FreeResolution out(induce_module(s, q.module));
    out.ranks = q.ranks;
    Matrix ag(f, (int)cosets.reps.size() * dw, q.ranks[0]);
    for (int r = 0; r < q.ranks[0]; ++r) {
        int col_s = r * ns + sg.group.identity();
        for (int v = 0; v < dw; ++v) ag.at(c0 * dw + v, r) = q.aug.at(v, col_s);
    }
    out.aug = extend_to_module(FreeModule(g, f, q.ranks[0]), out.module, ag);
    out.d.push_back(Matrix(f, 0, 0));
    for (int n = 1; n <= q.length(); ++n) {
        Matrix gen(f, q.ranks[n - 1] * n0, q.ranks[n]);
        for (int r = 0; r < q.ranks[n]; ++r) {
            int col_s = r * ns + sg.group.identity();
            for (int i = 0; i < q.ranks[n - 1]; ++i)
                for (int h = 0; h < ns; ++h) {
                    uint32_t v = q.d[n].at(i * ns + h, col_s);
                    if (v) gen.at(i * n0 + sg.to_parent[h], r) = v;
                }
        }
        out.d.push_back(extend_free(FreeModule(g, f, q.ranks[n]), FreeModule(g, f, q.ranks[n - 1]), gen));
    }
    return out;
}

/* Homology dimensions of a finite complex C_0 <- C_1 <- ... <- C_N given by
   the maps d[1..N]; H_n = dim C_n - rank d_n - rank d_{n+1} (d_0 = d_{N+1} = 0).
   Returns H_0..H_N. */
inline std::vector<int> homology_dims(const std::vector<int>& dims, const std::vector<Matrix>& d) {
    int n = (int)dims.size() - 1;
    require((int)d.size() == n + 1, "homology_dims: need d[0..N] with d[0] a dummy");
    std::vector<int> rk(n + 2, 0);
    for (int i = 1; i <= n; ++i) {
        require(d[i].rows() == 0 || d[i].cols() == 0 ||
                    (d[i].rows() == dims[i - 1] && d[i].cols() == dims[i]),
                "homology_dims: shape mismatch at " + std::to_string(i));
        rk[i] = rank(d[i]);
    }
    std::vector<int> h(n + 1);
    for (int i = 0; i <= n; ++i) h[i] = dims[i] - rk[i] - rk[i + 1];
    return h;
}

}  // namespace modres
