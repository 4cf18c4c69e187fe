#pragma once

// shared fixtures for the test suite: rank oracles and randomized instance
// builders (short exact sequences, module complexes) used by several files

#include <random>

#include "modres/sampling.hpp"
#include "modres/two_of_three.hpp"

namespace testutil {

using namespace modres;

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// random equivariant map a -> b (possibly zero), drawn from Hom_kG(a, b)
inline Matrix random_hom(std::mt19937_64& rng, const GModule& a, const GModule& b) {
    Matrix basis = hom_space(a, b);
    PrimeField f = a.field();
    if (basis.cols() == 0) return Matrix(f, b.dim(), a.dim());
    Matrix c(f, basis.cols(), 1);
    for (int i = 0; i < basis.cols(); ++i) c.at(i, 0) = (uint32_t)rand_below(rng, f.p);
    Matrix v = basis * c;
    std::vector<uint32_t> flat(v.rows());
    for (int i = 0; i < v.rows(); ++i) flat[i] = v.at(i, 0);
    return unvec_rowmajor(flat, f, b.dim(), a.dim());
}

// random module with floor <= dim <= cap: a permutation module, sometimes
// shrunk to a random submodule
inline GModule random_small_module(std::mt19937_64& rng, const Group& g, PrimeField f, int cap,
                                   int floor = 1) {
    for (;;) {
        GModule m = random_permutation_module(rng, g, f);
        if (m.dim() >= floor && m.dim() <= cap && rand_below(rng, 2) == 0) return m;
        GModule s = random_submodule(rng, m);
        if (s.dim() >= floor && s.dim() <= cap) return s;
    }
}

// 0 -> sub -> m -> quotient -> 0 from a random proper nonzero submodule;
// the quotient action lives on the non-pivot coordinates
inline ShortExactSequence random_ses(std::mt19937_64& rng, const GModule& m) {
    PrimeField f = m.field();
    require(m.dim() >= 2, "random_ses: ambient module too small");
    for (;;) {
        Matrix b = random_matrix(rng, f, m.dim(), 2);
        for (;;) {
            Matrix big = b;
            for (int g : m.group().generators()) big = Matrix::hstack(big, m.action(g) * b);
            Matrix closed = image_basis(big).basis;
            if (closed == b) break;
            b = closed;
        }
        ImageBasis ib = image_basis(b);
        int k = ib.basis.cols();
        if (k == 0 || k == m.dim()) continue;

        GModule sub = submodule_as_gmodule(m, ib.basis, ib.coords);
        std::vector<char> pivot(m.dim(), 0);
        for (int r : ib.coords) pivot[r] = 1;
        Matrix comp(f, m.dim(), m.dim() - k);
        int cc = 0;
        for (int r = 0; r < m.dim(); ++r)
            if (!pivot[r]) comp.at(r, cc++) = 1;
        Matrix p = Matrix::hstack(ib.basis, comp);
        Matrix pinv = *inverse(p);
        Matrix proj(f, m.dim() - k, m.dim());
        for (int i = 0; i < m.dim() - k; ++i)
            for (int j = 0; j < m.dim(); ++j) proj.at(i, j) = pinv.at(k + i, j);
        std::vector<Matrix> qact;
        qact.reserve(m.group().order());
        for (int x = 0; x < m.group().order(); ++x) qact.push_back(proj * m.action(x) * comp);
        GModule quot(m.group(), f, std::move(qact), true);
        ShortExactSequence ses{sub, m, quot, ib.basis, proj};
        ses.check();
        return ses;
    }
}

struct ComplexInstance {
    ModuleComplex c;
    std::vector<FreeResolution> cols;
};

// randomized chain complex (2 or 3 terms, composite maps zero) together with
// a resolution of each term, ready for totalization
inline ComplexInstance random_complex(std::mt19937_64& rng, const Group& g, PrimeField f,
                                      int nterms, int dim_cap, int total_len, bool minimal) {
    std::vector<GModule> terms;
    for (int i = 0; i < nterms; ++i) terms.push_back(random_small_module(rng, g, f, dim_cap));
    std::vector<Matrix> maps;
    maps.push_back(Matrix(f, 0, 0));
    Matrix phi = random_hom(rng, terms[1], terms[0]);
    maps.push_back(phi);
    if (nterms == 3) {
        auto kb = kernel_basis_full(phi);
        Matrix psi(f, terms[1].dim(), terms[2].dim());
        if (kb.basis.cols() > 0) {
            GModule kmod = submodule_as_gmodule(terms[1], kb.basis, kb.free_cols);
            psi = kb.basis * random_hom(rng, terms[2], kmod);
        }
        maps.push_back(psi);
    }
    ComplexInstance inst{ModuleComplex{terms, maps}, {}};
    inst.c.check();
    for (int i = 0; i < nterms; ++i) {
        int len = total_len >= i ? total_len - i : 0;
        inst.cols.push_back(materialize(resolve(terms[i], len, minimal)));
    }
    return inst;
}

}  // namespace testutil
