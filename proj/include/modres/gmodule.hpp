#pragma once

#include "group.hpp"

namespace modres {

/* Finite-dimensional representation of a group over GF(p): one dense action
   matrix per group element, shared immutably so copies stay cheap.

   Validation checks rho(e) = I and rho(g)rho(h) = rho(gh) for every
   generator g and every h; that forces full multiplicativity (induct on the
   length of g as a positive word in the generators). */
class GModule {
public:
    GModule(Group g, PrimeField f, std::vector<Matrix> actions, bool validate = true)
        : grp_(std::move(g)), f_(f) {
        require((int)actions.size() == grp_.order(), "GModule: need one matrix per element");
        dim_ = actions[0].rows();
        for (const auto& m : actions) {
            require(m.rows() == dim_ && m.cols() == dim_, "GModule: action matrices not square/uniform");
            require(m.field() == f_, "GModule: field mismatch");
        }
        act_ = std::make_shared<const std::vector<Matrix>>(std::move(actions));
        if (validate) check();
    }

    static GModule trivial(const Group& g, PrimeField f, int dim = 1) {
        std::vector<Matrix> a(g.order(), Matrix::identity(f, dim));
        return GModule(g, f, std::move(a), false);
    }

    /* Left-regular representation: rho(g) e_h = e_{gh}. */
    static GModule regular(const Group& g, PrimeField f) {
        int n = g.order();
        std::vector<Matrix> a;
        a.reserve(n);
        for (int x = 0; x < n; ++x) {
            Matrix m(f, n, n);
            for (int h = 0; h < n; ++h) m.at(g.mul(x, h), h) = 1;
            a.push_back(std::move(m));
        }
        return GModule(g, f, std::move(a), false);
    }

    /* Expand matrices given on the group's generators() by word BFS, then
       validate the whole table. */
    static GModule from_generator_action(const Group& g, PrimeField f,
                                         const std::map<int, Matrix>& gen_act) {
        int n = g.order();
        int d = -1;
        for (int x : g.generators())
            require(gen_act.count(x), "from_generator_action: missing generator " + std::to_string(x));
        for (const auto& [x, m] : gen_act) {
            require(x >= 0 && x < n, "from_generator_action: bad element index");
            require(m.rows() == m.cols(), "from_generator_action: non-square matrix");
            if (d < 0) d = m.rows();
            require(m.rows() == d, "from_generator_action: dimension mismatch");
        }
        require(d >= 0, "from_generator_action: empty action");
        std::vector<Matrix> act(n, Matrix(f, 0, 0));
        std::vector<bool> have(n, false);
        act[g.identity()] = Matrix::identity(f, d);
        have[g.identity()] = true;
        std::vector<int> queue = {g.identity()};
        while (!queue.empty()) {
            int h = queue.back();
            queue.pop_back();
            for (const auto& [x, m] : gen_act) {
                int xh = g.mul(x, h);
                if (!have[xh]) {
                    act[xh] = m * act[h];
                    have[xh] = true;
                    queue.push_back(xh);
                }
            }
        }
        for (int h = 0; h < n; ++h) require(have[h], "from_generator_action: given elements do not generate");
        return GModule(g, f, std::move(act));
    }

    const Group& group() const { return grp_; }
    PrimeField field() const { return f_; }
    int dim() const { return dim_; }
    const Matrix& action(int g) const { return (*act_)[g]; }

    GModule direct_sum(const GModule& o) const {
        require(grp_ == o.grp_ && f_ == o.f_, "direct_sum: incompatible modules");
        std::vector<Matrix> a;
        a.reserve(grp_.order());
        for (int x = 0; x < grp_.order(); ++x) a.push_back(Matrix::block_diag(action(x), o.action(x)));
        return GModule(grp_, f_, std::move(a), false);
    }

    void check() const {
        int e = grp_.identity();
        require(action(e) == Matrix::identity(f_, dim_), "GModule: rho(identity) != I");
        for (int g : grp_.generators())
            for (int h = 0; h < grp_.order(); ++h)
                require(action(g) * action(h) == action(grp_.mul(g, h)),
                        "GModule: rho(g)rho(h) != rho(gh) at g=" + std::to_string(g) +
                            " h=" + std::to_string(h));
    }

private:
    Group grp_;
    PrimeField f_;
    int dim_ = 0;
    std::shared_ptr<const std::vector<Matrix>> act_;
};

/* Free module kG^rank with basis e_{i,h} at coordinate i*|G| + h and action
   g . e_{i,h} = e_{i,gh}. Kept implicit: acting permutes coordinates, so no
   dense matrices are materialized unless asked for. */
struct FreeModule {
    Group grp;
    PrimeField f;
    int rank = 0;

    FreeModule(Group g, PrimeField field, int r) : grp(std::move(g)), f(field), rank(r) {
        require(r >= 0, "FreeModule: negative rank");
    }

    int dim() const { return rank * grp.order(); }
    int index(int i, int h) const { return i * grp.order() + h; }

    /* Apply g to every column of a matrix whose rows are free-module coords. */
    Matrix act(int g, const Matrix& cols) const {
        require(cols.rows() == dim(), "FreeModule::act: row count mismatch");
        Matrix out(f, cols.rows(), cols.cols());
        int n = grp.order();
        for (int i = 0; i < rank; ++i)
            for (int h = 0; h < n; ++h) {
                int src = i * n + h, dst = i * n + grp.mul(g, h);
                for (int c = 0; c < cols.cols(); ++c) out.at(dst, c) = cols.at(src, c);
            }
        return out;
    }

    Matrix action_matrix(int g) const {
        Matrix m(f, dim(), dim());
        int n = grp.order();
        for (int i = 0; i < rank; ++i)
            for (int h = 0; h < n; ++h) m.at(i * n + grp.mul(g, h), i * n + h) = 1;
        return m;
    }

    GModule materialize() const {
        std::vector<Matrix> a;
        a.reserve(grp.order());
        for (int x = 0; x < grp.order(); ++x) a.push_back(action_matrix(x));
        return GModule(grp, f, std::move(a), false);
    }
};

/* Equivariant extension: a kG-map from a free module is determined by the
   images of the generators e_{i,e}. gen_images has one column per i. */
inline Matrix extend_free(const FreeModule& src, const FreeModule& tgt, const Matrix& gen_images) {
    require(gen_images.rows() == tgt.dim() && gen_images.cols() == src.rank,
            "extend_free: generator image shape mismatch");
    Matrix out(src.f, tgt.dim(), src.dim());
    int n = src.grp.order();
    for (int h = 0; h < n; ++h) {
        // column (i,h) = h . gen_images[:,i]; the action permutes target coords
        for (int i = 0; i < src.rank; ++i) {
            int col = src.index(i, h);
            for (int j = 0; j < tgt.rank; ++j)
                for (int x = 0; x < n; ++x) {
                    uint32_t v = gen_images.at(tgt.index(j, x), i);
                    if (v) out.at(tgt.index(j, src.grp.mul(h, x)), col) = v;
                }
        }
    }
    return out;
}

inline Matrix extend_to_module(const FreeModule& src, const GModule& tgt, const Matrix& gen_images) {
    require(tgt.group() == src.grp, "extend_to_module: group mismatch");
    require(gen_images.rows() == tgt.dim() && gen_images.cols() == src.rank,
            "extend_to_module: generator image shape mismatch");
    Matrix out(src.f, tgt.dim(), src.dim());
    int n = src.grp.order();
    for (int h = 0; h < n; ++h) {
        Matrix moved = tgt.action(h) * gen_images;
        for (int i = 0; i < src.rank; ++i) out.set_col(src.index(i, h), moved.col(i));
    }
    return out;
}

/* X : A -> B is kG-linear iff it commutes with the generator actions. */
inline bool is_equivariant(const GModule& a, const GModule& b, const Matrix& x) {
    require(a.group() == b.group(), "is_equivariant: group mismatch");
    require(x.rows() == b.dim() && x.cols() == a.dim(), "is_equivariant: shape mismatch");
    for (int g : a.group().generators())
        if (!(x * a.action(g) == b.action(g) * x)) return false;
    return true;
}

inline GModule restrict_module(const GModule& m, const Subgroup& s) {
    require(s.parent() == m.group(), "restrict_module: subgroup of a different group");
    auto sg = s.to_group();
    std::vector<Matrix> a;
    a.reserve(s.order());
    for (int i = 0; i < s.order(); ++i) a.push_back(m.action(sg.to_parent[i]));
    return GModule(sg.group, m.field(), std::move(a), false);
}

/* Ind_S^G W: basis t_j (x) w over cosets j; g . (t_j (x) w) = t_{j'} (x) h.w
   where g t_j = t_{j'} h with h in S. W must live over s.to_group().group. */
inline GModule induce_module(const Subgroup& s, const GModule& w) {
    const Group& g = s.parent();
    auto sg = s.to_group();
    require(w.group() == sg.group, "induce_module: module not over the subgroup");
    auto cosets = s.left_cosets();
    int q = (int)cosets.reps.size(), d = w.dim();
    PrimeField f = w.field();
    std::vector<Matrix> act;
    act.reserve(g.order());
    for (int x = 0; x < g.order(); ++x) {
        Matrix m(f, q * d, q * d);
        for (int j = 0; j < q; ++j) {
            int xt = g.mul(x, cosets.reps[j]);
            int jp = cosets.coset_of[xt];
            int h = g.mul(g.inv(cosets.reps[jp]), xt);
            int hs = sg.from_parent[h];
            require(hs >= 0, "induce_module: transversal arithmetic left the subgroup");
            m.set_block(jp * d, j * d, w.action(hs));
        }
        act.push_back(std::move(m));
    }
    return GModule(g, f, std::move(act), false);
}

/* Coordinate unshuffle Ind(A (+) B) -> Ind(A) (+) Ind(B): induction of a
   direct sum interleaves the summands per coset; this permutation separates
   them. Orthogonal, so the transpose inverts it. */
inline Matrix induction_unshuffle(PrimeField f, int ncosets, int da, int db) {
    int di = da + db;
    Matrix w(f, ncosets * di, ncosets * di);
    for (int j = 0; j < ncosets; ++j)
        for (int v = 0; v < di; ++v) {
            int tgt = v < da ? j * da + v : ncosets * da + j * db + (v - da);
            w.at(tgt, j * di + v) = 1;
        }
    return w;
}

/* Diagonal action on A (x)_k B; coordinate (i,j) -> i*dimB + j matches the
   row-major Kronecker product. */
inline GModule tensor_modules(const GModule& a, const GModule& b) {
    require(a.group() == b.group() && a.field() == b.field(), "tensor_modules: incompatible");
    std::vector<Matrix> act;
    act.reserve(a.group().order());
    for (int x = 0; x < a.group().order(); ++x) act.push_back(Matrix::kronecker(a.action(x), b.action(x)));
    return GModule(a.group(), a.field(), std::move(act), false);
}

/* Basis of Hom_kG(A, B): solutions X of X rho_A(g) = rho_B(g) X over the
   generators. Each column of the result is a row-major vec(X). */
inline Matrix hom_space(const GModule& a, const GModule& b) {
    require(a.group() == b.group() && a.field() == b.field(), "hom_space: incompatible");
    PrimeField f = a.field();
    int da = a.dim(), db = b.dim();
    Matrix basis = Matrix::identity(f, da * db);
    for (int g : a.group().generators()) {
        Matrix c = Matrix::kronecker(Matrix::identity(f, db), a.action(g).transpose()) -
                   Matrix::kronecker(b.action(g), Matrix::identity(f, da));
        Matrix restricted = c * basis;
        auto kb = kernel_basis(restricted);
        basis = basis * kb;
        if (basis.cols() == 0) break;
    }
    return basis;
}

inline Matrix unvec_rowmajor(const std::vector<uint32_t>& v, PrimeField f, int rows, int cols) {
    require((int)v.size() == rows * cols, "unvec: size mismatch");
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = v[(size_t)i * cols + j];
    return m;
}

/* Evaluation map kG^{dim M} -> M, e_{i,g} -> rho(g) m_i. Always equivariant
   and surjective; M is projective exactly when it splits. */
inline Matrix counit_map(const GModule& m) {
    FreeModule fr(m.group(), m.field(), m.dim());
    return extend_to_module(fr, m, Matrix::identity(m.field(), m.dim()));
}

struct ProjectivityResult {
    bool projective = false;
    Matrix splitting;  // s : M -> kG^{dim M} with counit_map(m) * s = id, equivariant
    ProjectivityResult() : splitting(PrimeField(2), 0, 0) {}
};

/* Higman's criterion: M is projective over kG iff id_M = sum_g rho(g) Phi
   rho(g)^-1 for some k-linear Phi. The solution turns into an explicit
   splitting of the evaluation map: s(m) puts Phi rho(g^-1) m in the g-block. */
inline ProjectivityResult is_projective(const GModule& m) {
    PrimeField f = m.field();
    int d = m.dim(), n = m.group().order();
    Matrix t(f, d * d, d * d);
    for (int g = 0; g < n; ++g)
        t = t + Matrix::kronecker(m.action(g), m.action(m.group().inv(g)).transpose());
    std::vector<uint32_t> id_vec((size_t)d * d, 0);
    for (int i = 0; i < d; ++i) id_vec[(size_t)i * d + i] = 1;
    auto sol = solve(t, id_vec);
    ProjectivityResult r;
    if (!sol) return r;
    Matrix phi = unvec_rowmajor(*sol, f, d, d);
    r.projective = true;
    r.splitting = Matrix(f, d * n, d);
    for (int g = 0; g < n; ++g) {
        Matrix blk = phi * m.action(m.group().inv(g));
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < d; ++c)
                if (blk.at(i, c)) r.splitting.at(i * n + g, c) = blk.at(i, c);
    }
    return r;
}

/* An invariant subspace of M with an echelon basis (coordinates = restriction
   to `coords` rows), packaged as a module in its own right. Invariance is
   checked on generators, which forces it everywhere; the per-element action
   matrices are then exact by construction. */
inline GModule submodule_as_gmodule(const GModule& m, const Matrix& basis,
                                    const std::vector<int>& coords) {
    int w = basis.cols();
    require((int)coords.size() == w && basis.rows() == m.dim(), "submodule: basis shape");
    for (int g : m.group().generators()) {
        Matrix moved = m.action(g) * basis;
        Matrix back = basis * moved.rows_subset(coords);
        require(back == moved, "submodule: not invariant under the action");
    }
    std::vector<Matrix> act;
    act.reserve(m.group().order());
    for (int x = 0; x < m.group().order(); ++x)
        act.push_back((m.action(x) * basis).rows_subset(coords));
    return GModule(m.group(), m.field(), std::move(act), false);
}

/* Same, with a free ambient module: the action is a coordinate permutation,
   so no dense ambient matrices are needed. */
inline GModule submodule_as_gmodule(const FreeModule& amb, const Matrix& basis,
                                    const std::vector<int>& coords) {
    int w = basis.cols();
    require((int)coords.size() == w && basis.rows() == amb.dim(), "submodule: basis shape");
    for (int g : amb.grp.generators()) {
        Matrix moved = amb.act(g, basis);
        require(basis * moved.rows_subset(coords) == moved,
                "submodule: not invariant under the action");
    }
    std::vector<Matrix> act;
    act.reserve(amb.grp.order());
    for (int x = 0; x < amb.grp.order(); ++x)
        act.push_back(amb.act(x, basis).rows_subset(coords));
    return GModule(amb.grp, amb.f, std::move(act), false);
}

struct TransferMaps {
    Matrix to_induced;    // M -> Ind_S^G(res_S M), block j = rho(t_j^-1)
    Matrix from_induced;  // Ind_S^G(res_S M) -> M, block j = rho(t_j)
    int index = 0;        // from_induced * to_induced = index * id
    TransferMaps() : to_induced(PrimeField(2), 0, 0), from_induced(PrimeField(2), 0, 0) {}
};

inline TransferMaps transfer_maps(const GModule& m, const Subgroup& s) {
    require(s.parent() == m.group(), "transfer_maps: subgroup of a different group");
    auto cosets = s.left_cosets();
    int q = (int)cosets.reps.size(), d = m.dim();
    TransferMaps t;
    t.index = q;
    t.to_induced = Matrix(m.field(), q * d, d);
    t.from_induced = Matrix(m.field(), d, q * d);
    for (int j = 0; j < q; ++j) {
        t.to_induced.set_block(j * d, 0, m.action(m.group().inv(cosets.reps[j])));
        t.from_induced.set_block(0, j * d, m.action(cosets.reps[j]));
    }
    return t;
}

}  // namespace modres
