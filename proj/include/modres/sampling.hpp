#pragma once

#include <random>

#include "gmodule.hpp"

namespace modres {

/* Bounded draw with rejection, so the stream of values for a given seed does
   not depend on the standard library's distribution internals. */
inline uint64_t rand_below(std::mt19937_64& rng, uint64_t n) {
    require(n > 0, "rand_below: empty range");
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t r;
    do r = rng();
    while (r >= lim);
    return r % n;
}

inline Matrix random_matrix(std::mt19937_64& rng, PrimeField f, int rows, int cols) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = (uint32_t)rand_below(rng, f.p);
    return m;
}

inline Matrix random_invertible(std::mt19937_64& rng, PrimeField f, int n) {
    for (;;) {
        Matrix m = random_matrix(rng, f, n, n);
        if (rank(m) == n) return m;
    }
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[(int)rand_below(rng, i + 1)]);
    return p;
}

/* Closure of a couple of random elements. */
inline Subgroup random_subgroup(std::mt19937_64& rng, const Group& g, int seeds = 2) {
    std::vector<int> seed;
    for (int i = 0; i < seeds; ++i) seed.push_back((int)rand_below(rng, g.order()));
    return Subgroup(g, closure(g, seed));
}

/* G permuting the left cosets of S, over F_p. */
inline GModule permutation_module(const Subgroup& s, PrimeField f) {
    const Group& g = s.parent();
    auto cosets = s.left_cosets();
    int nc = (int)cosets.reps.size();
    std::vector<Matrix> act;
    act.reserve(g.order());
    for (int x = 0; x < g.order(); ++x) {
        Matrix m(f, nc, nc);
        for (int c = 0; c < nc; ++c) m.at(cosets.coset_of[g.mul(x, cosets.reps[c])], c) = 1;
        act.push_back(std::move(m));
    }
    return GModule(g, f, std::move(act), false);
}

inline GModule random_permutation_module(std::mt19937_64& rng, const Group& g, PrimeField f) {
    return permutation_module(random_subgroup(rng, g), f);
}

/* Smallest submodule containing a few random vectors: saturate the span
   under the action, then cut out the abstract module on the closed span. */
inline GModule random_submodule(std::mt19937_64& rng, const GModule& m, int nvecs = 2) {
    require(m.dim() > 0, "random_submodule: zero ambient module");
    Matrix b = random_matrix(rng, m.field(), m.dim(), nvecs);
    while (rank(b) == 0) b = random_matrix(rng, m.field(), m.dim(), nvecs);
    for (;;) {
        Matrix big = b;
        for (int x = 0; x < m.group().order(); ++x) big = Matrix::hstack(big, m.action(x) * b);
        Matrix closed = image_basis(big).basis;
        if (closed.cols() == b.cols() && closed == b) break;
        b = closed;
    }
    ImageBasis ib = image_basis(b);
    return submodule_as_gmodule(m, ib.basis, ib.coords);
}

}  // namespace modres
