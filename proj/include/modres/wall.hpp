#pragma once

#include <array>

#include "resolution.hpp"

namespace modres {

/* Finite complex of modules C_0 <- C_1 <- ... <- C_m. maps[i] : C_i -> C_{i-1}
   for i >= 1; maps[0] is a dummy. */
struct ModuleComplex {
    std::vector<GModule> terms;
    std::vector<Matrix> maps;

    int top() const { return (int)terms.size() - 1; }

    void check() const {
        require(!terms.empty() && terms.size() == maps.size(), "ModuleComplex: size mismatch");
        for (int i = 1; i <= top(); ++i) {
            require(maps[i].rows() == terms[i - 1].dim() && maps[i].cols() == terms[i].dim(),
                    "ModuleComplex: map shape at " + std::to_string(i));
            require(is_equivariant(terms[i], terms[i - 1], maps[i]),
                    "ModuleComplex: map " + std::to_string(i) + " not equivariant");
            if (i >= 2)
                require((maps[i - 1] * maps[i]).is_zero(),
                        "ModuleComplex: d^2 != 0 at " + std::to_string(i));
        }
    }
};

/* Same underlying representation: group, field, and every action matrix. */
inline bool same_module(const GModule& a, const GModule& b) {
    if (!(a.group() == b.group()) || a.field() != b.field() || a.dim() != b.dim()) return false;
    for (int x = 0; x < a.group().order(); ++x)
        if (!(a.action(x) == b.action(x))) return false;
    return true;
}

/* Column indices of the free generators e_{r, e}. */
inline std::vector<int> free_generator_columns(const FreeModule& fm) {
    std::vector<int> idx;
    for (int r = 0; r < fm.rank; ++r) idx.push_back(fm.index(r, fm.grp.identity()));
    return idx;
}

/* Solve A X = B for an equivariant X : src -> mid, where A is itself
   equivariant. It is enough to solve on the free generators of src and
   extend; both sides then agree on a generating set. */
inline std::optional<Matrix> equivariant_solve(const Matrix& a, const FreeModule& src,
                                               const FreeModule& mid, const Matrix& b) {
    require(a.cols() == mid.dim() && b.cols() == src.dim() && a.rows() == b.rows(),
            "equivariant_solve: shape mismatch");
    Matrix bg = b.cols_subset(free_generator_columns(src));
    auto xg = solve_many(a, bg);
    if (!xg) return std::nullopt;
    return extend_free(src, mid, *xg);
}

/* Lift phi : M -> N to a chain map f_j : P_j -> Q_j between free resolutions
   (aug_Q f_0 = phi aug_P, d^Q_j f_j = f_{j-1} d^P_j). Solvable by exactness;
   failure means the inputs were not resolutions and is reported. */
inline std::vector<Matrix> lift_chain_map(const FreeResolution& p, const FreeResolution& q,
                                          const Matrix& phi, int upto) {
    require(upto <= p.length() && upto <= q.length(), "lift_chain_map: resolutions too short");
    require(phi.rows() == q.module.dim() && phi.cols() == p.module.dim(),
            "lift_chain_map: phi shape mismatch");
    std::vector<Matrix> f;
    auto x0 = equivariant_solve(q.aug, p.term(0), q.term(0), phi * p.aug);
    require(x0.has_value(), "lift_chain_map: no lift at degree 0");
    f.push_back(*x0);
    for (int j = 1; j <= upto; ++j) {
        auto x = equivariant_solve(q.d[j], p.term(j), q.term(j), f[j - 1] * p.d[j]);
        require(x.has_value(), "lift_chain_map: no lift at degree " + std::to_string(j));
        f.push_back(*x);
    }
    return f;
}

/* Totalization of a complex of modules from free resolutions of its terms,
   after Wall. F^{ij} = j-th term of the resolution of C_i; level maps

       d_k^{ij} : F^{ij} -> F^{i-k, j+k-1}

   with d_0 the column differentials, d_1 = (-1)^j (lift of maps[i]), and the
   higher d_k solved degree by degree from

       d_0 d_k + d_k d_0 = - sum_{a+b=k, a,b >= 1} d_a d_b ,

   which is solvable because the columns are exact; failure to solve is an
   input error and throws. The total complex T_n = (+)_{i+j=n} F^{ij} (blocks
   in ascending i) is free with D^2 = 0 and the block-(n,0) augmentations
   pi_n : T_n -> C_n form a chain map inducing H_n(T) = H_n(C). */
struct WallResult {
    int total_len = 0;
    std::vector<int> total_ranks;                 // rank of T_n
    std::vector<Matrix> total_d;                  // [0] dummy
    std::vector<Matrix> pi;                       // pi[n] : T_n -> C_n, n <= min(m, total_len)
    std::map<std::array<int, 3>, Matrix> levels;  // {i,j,k} -> d_k^{ij}
    std::vector<std::vector<std::pair<int, int>>> blocks;  // per degree: (i, rank offset)
    bool d_squared_zero = false;
    bool homology_match = false;
};

inline WallResult wall_totalize(const ModuleComplex& c, const std::vector<FreeResolution>& cols,
                                int total_len) {
    int m = c.top();
    require((int)cols.size() == m + 1, "wall_totalize: need one resolution per term");
    require(total_len >= 0, "wall_totalize: negative length");
    const Group& g = c.terms[0].group();
    PrimeField f = c.terms[0].field();
    int n0 = g.order();
    for (int i = 0; i <= m; ++i) {
        require(cols[i].module.group() == g && cols[i].module.field() == f,
                "wall_totalize: column " + std::to_string(i) + " over the wrong algebra");
        require(same_module(cols[i].module, c.terms[i]),
                "wall_totalize: column " + std::to_string(i) + " resolves the wrong module");
        if (i <= total_len)
            require(cols[i].length() >= total_len - i,
                    "wall_totalize: column " + std::to_string(i) + " too short");
    }

    WallResult w;
    w.total_len = total_len;
    auto& lv = w.levels;

    // k = 0: column differentials
    for (int i = 0; i <= std::min(m, total_len); ++i)
        for (int j = 1; i + j <= total_len; ++j) lv.insert_or_assign({i, j, 0}, cols[i].d[j]);

    // k = 1: lifted chain maps with the column-degree sign
    for (int i = 1; i <= std::min(m, total_len); ++i) {
        auto lift = lift_chain_map(cols[i], cols[i - 1], c.maps[i], total_len - i);
        for (int j = 0; i + j <= total_len; ++j)
            lv.insert_or_assign({i, j, 1}, (j % 2 == 1) ? lift[j].negated() : lift[j]);
    }

    // k >= 2: homotopies against the accumulated anticommutator error
    for (int k = 2; k <= m; ++k) {
        for (int i = k; i <= std::min(m, total_len); ++i) {
            for (int j = 0; i + j <= total_len; ++j) {
                FreeModule src = cols[i].term(j);
                FreeModule tgt = cols[i - k].term(j + k - 1);
                Matrix err(f, cols[i - k].ranks[j + k - 2] * n0, src.dim());
                for (int b = 1; b <= k - 1; ++b) {
                    int a = k - b;
                    err = err + lv.at({i - b, j + b - 1, a}) * lv.at({i, j, b});
                }
                Matrix rhs = err.negated();
                if (j >= 1) rhs = rhs - lv.at({i, j - 1, k}) * lv.at({i, j, 0});
                auto x = equivariant_solve(cols[i - k].d[j + k - 1], src, tgt, rhs);
                require(x.has_value(), "wall_totalize: homotopy unsolvable at (i=" +
                                           std::to_string(i) + ", j=" + std::to_string(j) +
                                           ", k=" + std::to_string(k) + ")");
                lv.insert_or_assign({i, j, k}, *x);
            }
        }
    }

    // assemble the total complex
    w.blocks.resize(total_len + 1);
    w.total_ranks.resize(total_len + 1, 0);
    for (int n = 0; n <= total_len; ++n) {
        int off = 0;
        for (int i = 0; i <= std::min(m, n); ++i) {
            w.blocks[n].push_back({i, off});
            off += cols[i].ranks[n - i];
        }
        w.total_ranks[n] = off;
    }
    w.total_d.push_back(Matrix(f, 0, 0));
    for (int n = 1; n <= total_len; ++n) {
        Matrix d(f, w.total_ranks[n - 1] * n0, w.total_ranks[n] * n0);
        for (auto [i, soff] : w.blocks[n]) {
            int j = n - i;
            for (auto [ip, toff] : w.blocks[n - 1]) {
                int k = i - ip;
                if (k < 0) continue;
                auto it = lv.find({i, j, k});
                if (it == lv.end()) continue;
                d.set_block(toff * n0, soff * n0, it->second);
            }
        }
        w.total_d.push_back(std::move(d));
    }
    for (int n = 0; n <= std::min(m, total_len); ++n) {
        Matrix p(f, c.terms[n].dim(), w.total_ranks[n] * n0);
        for (auto [i, off] : w.blocks[n])
            if (i == n) p.set_block(0, off * n0, cols[n].aug);
        w.pi.push_back(std::move(p));
    }
    return w;
}

/* Exact certificate: D^2 = 0, pi a chain map, and H_n(T) = H_n(C) for every
   certifiable degree (n <= total_len - 1; beyond the complex top that means
   H_n(T) = 0). Fills the flags and reports the first discrepancy, if any. */
inline std::string verify_wall(WallResult& w, const ModuleComplex& c) {
    int m = c.top();
    w.d_squared_zero = true;
    for (int n = 2; n <= w.total_len; ++n)
        if (!(w.total_d[n - 1] * w.total_d[n]).is_zero()) {
            w.d_squared_zero = false;
            return "D^2 != 0 at degree " + std::to_string(n);
        }
    for (int n = 1; n <= std::min(m, w.total_len); ++n)
        if (!(w.pi[n - 1] * w.total_d[n] == c.maps[n] * w.pi[n])) {
            w.homology_match = false;
            return "pi is not a chain map at degree " + std::to_string(n);
        }
    // homology comparison
    int n0 = c.terms[0].group().order();
    std::vector<int> tdims;
    for (int r : w.total_ranks) tdims.push_back(r * n0);
    std::vector<int> ht = homology_dims(tdims, w.total_d);
    std::vector<int> cdims;
    for (const auto& t : c.terms) cdims.push_back(t.dim());
    std::vector<int> hc = homology_dims(cdims, c.maps);
    w.homology_match = true;
    for (int n = 0; n <= w.total_len - 1; ++n) {
        int expect = n <= m ? hc[n] : 0;
        if (ht[n] != expect) {
            w.homology_match = false;
            return "H_" + std::to_string(n) + "(T) = " + std::to_string(ht[n]) + " but H(C) = " +
                   std::to_string(expect);
        }
    }
    return "";
}

}  // namespace modres
