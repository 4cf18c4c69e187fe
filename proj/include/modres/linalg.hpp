#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modres {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

/* Arithmetic in F_p. p may be any prime < 2^31; the workbench normally runs
   at p in {2,3,5,7}. */
struct PrimeField {
    uint32_t p;

    explicit PrimeField(uint32_t prime) : p(prime) {
        require(prime >= 2, "PrimeField: p must be >= 2");
        for (uint32_t d = 2; (uint64_t)d * d <= prime; ++d)
            require(prime % d != 0, "PrimeField: " + std::to_string(prime) + " is not prime");
    }

    uint32_t reduce(int64_t v) const {
        int64_t r = v % (int64_t)p;
        if (r < 0) r += p;
        return (uint32_t)r;
    }
    uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p ? s - p : s; }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return (uint32_t)((uint64_t)a * b % p); }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t r = 1, b = a % p;
        while (e) { if (e & 1) r = r * b % p; b = b * b % p; e >>= 1; }
        return (uint32_t)r;
    }
    uint32_t inv(uint32_t a) const {
        require(a % p != 0, "PrimeField: inverse of zero");
        return pow(a, p - 2);
    }
    bool operator==(const PrimeField& o) const { return p == o.p; }
    bool operator!=(const PrimeField& o) const { return p != o.p; }
};

/* Dense matrix over F_p, row major. Desk scale: dims up to a few thousand. */
class Matrix {
public:
    Matrix(PrimeField f, int rows, int cols)
        : f_(f), rows_(rows), cols_(cols), e_((size_t)rows * cols, 0) {
        require(rows >= 0 && cols >= 0, "Matrix: negative dimension");
    }

    static Matrix identity(PrimeField f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Matrix from_rows(PrimeField f, const std::vector<std::vector<int64_t>>& rows) {
        int r = (int)rows.size();
        int c = r == 0 ? 0 : (int)rows[0].size();
        Matrix m(f, r, c);
        for (int i = 0; i < r; ++i) {
            require((int)rows[i].size() == c, "Matrix::from_rows: ragged rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = f.reduce(rows[i][j]);
        }
        return m;
    }

    PrimeField field() const { return f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    uint32_t& at(int i, int j) { return e_[(size_t)i * cols_ + j]; }
    uint32_t at(int i, int j) const { return e_[(size_t)i * cols_ + j]; }
    uint32_t* row(int i) { return e_.data() + (size_t)i * cols_; }
    const uint32_t* row(int i) const { return e_.data() + (size_t)i * cols_; }

    bool is_zero() const {
        for (uint32_t v : e_) if (v) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o, "add");
        Matrix r(f_, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.add(e_[k], o.e_[k]);
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o, "sub");
        Matrix r(f_, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.sub(e_[k], o.e_[k]);
        return r;
    }
    Matrix negated() const {
        Matrix r(f_, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.neg(e_[k]);
        return r;
    }
    Matrix scaled(uint32_t c) const {
        Matrix r(f_, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.mul(e_[k], c % f_.p);
        return r;
    }

    /* i-k-j product with row accumulators; for p < 2^16 the row is reduced
       once at the end (4096 terms of (p-1)^2 stay below 2^64). */
    Matrix operator*(const Matrix& o) const {
        require(f_ == o.f_, "Matrix::mul: field mismatch");
        require(cols_ == o.rows_, "Matrix::mul: shape mismatch " + shape() + " * " + o.shape());
        Matrix r(f_, rows_, o.cols_);
        if (rows_ == 0 || cols_ == 0 || o.cols_ == 0) return r;
        std::vector<uint64_t> acc(o.cols_);
        bool small = f_.p < (1u << 16);
        for (int i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            const uint32_t* a = row(i);
            for (int k = 0; k < cols_; ++k) {
                uint64_t aik = a[k];
                if (!aik) continue;
                const uint32_t* b = o.row(k);
                if (small) {
                    for (int j = 0; j < o.cols_; ++j) acc[j] += aik * b[j];
                } else {
                    for (int j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + aik * b[j]) % f_.p;
                }
            }
            uint32_t* out = r.row(i);
            for (int j = 0; j < o.cols_; ++j) out[j] = (uint32_t)(acc[j] % f_.p);
        }
        return r;
    }

    std::vector<uint32_t> apply(const std::vector<uint32_t>& v) const {
        require((int)v.size() == cols_, "Matrix::apply: size mismatch");
        std::vector<uint32_t> out(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            uint64_t acc = 0;
            const uint32_t* a = row(i);
            for (int j = 0; j < cols_; ++j) acc += (uint64_t)a[j] * v[j] % f_.p;
            out[i] = (uint32_t)(acc % f_.p);
        }
        return out;
    }

    Matrix transpose() const {
        Matrix r(f_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<uint32_t> col(int j) const {
        std::vector<uint32_t> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }
    void set_col(int j, const std::vector<uint32_t>& v) {
        require((int)v.size() == rows_, "Matrix::set_col: size mismatch");
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    void set_block(int r0, int c0, const Matrix& b) {
        require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "Matrix::set_block: out of range");
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
    }
    Matrix block(int r0, int c0, int nr, int nc) const {
        require(r0 >= 0 && c0 >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_, "Matrix::block: out of range");
        Matrix b(f_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
        return b;
    }
    Matrix cols_subset(const std::vector<int>& idx) const {
        Matrix b(f_, rows_, (int)idx.size());
        for (int j = 0; j < (int)idx.size(); ++j)
            for (int i = 0; i < rows_; ++i) b.at(i, j) = at(i, idx[j]);
        return b;
    }
    Matrix rows_subset(const std::vector<int>& idx) const {
        Matrix b(f_, (int)idx.size(), cols_);
        for (int i = 0; i < (int)idx.size(); ++i)
            for (int j = 0; j < cols_; ++j) b.at(i, j) = at(idx[i], j);
        return b;
    }

    static Matrix hstack(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.f_ == b.f_, "hstack: mismatch");
        Matrix r(a.f_, a.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.cols_ && a.f_ == b.f_, "vstack: mismatch");
        Matrix r(a.f_, a.rows_ + b.rows_, a.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, 0, b);
        return r;
    }
    static Matrix block_diag(const Matrix& a, const Matrix& b) {
        require(a.f_ == b.f_, "block_diag: field mismatch");
        Matrix r(a.f_, a.rows_ + b.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, a.cols_, b);
        return r;
    }

    /* Kronecker product, row-major convention: (A(x)B)[(i1,i2),(j1,j2)] = A[i1,j1]B[i2,j2]. */
    static Matrix kronecker(const Matrix& a, const Matrix& b) {
        require(a.f_ == b.f_, "kronecker: field mismatch");
        Matrix r(a.f_, a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (int i1 = 0; i1 < a.rows_; ++i1)
            for (int j1 = 0; j1 < a.cols_; ++j1) {
                uint32_t v = a.at(i1, j1);
                if (!v) continue;
                for (int i2 = 0; i2 < b.rows_; ++i2)
                    for (int j2 = 0; j2 < b.cols_; ++j2)
                        r.at(i1 * b.rows_ + i2, j1 * b.cols_ + j2) = a.f_.mul(v, b.at(i2, j2));
            }
        return r;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void check_same_shape(const Matrix& o, const char* op) const {
        require(f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_,
                std::string("Matrix::") + op + ": shape mismatch");
    }

    PrimeField f_;
    int rows_, cols_;
    std::vector<uint32_t> e_;
};

namespace detail {

/* r -= f*pv on a row segment, entries kept reduced. mul table keeps the hot
   loop free of 64-bit divisions for small p. */
struct RowOps {
    explicit RowOps(PrimeField f) : f_(f) {
        if (f.p < 256) {
            tab_.resize((size_t)f.p * f.p);
            for (uint32_t a = 0; a < f.p; ++a)
                for (uint32_t b = 0; b < f.p; ++b) tab_[(size_t)a * f.p + b] = (uint8_t)(a * b % f.p);
        }
    }
    void submul(uint32_t* r, const uint32_t* pv, int n, uint32_t f) const {
        uint32_t p = f_.p;
        if (f == 0) return;
        if (p == 2) {
            for (int j = 0; j < n; ++j) r[j] ^= pv[j];
            return;
        }
        if (!tab_.empty()) {
            const uint8_t* mulf = tab_.data() + (size_t)(p - f) * p;  // (p-f)*b == -f*b
            for (int j = 0; j < n; ++j) {
                uint32_t x = r[j] + mulf[pv[j]];
                r[j] = x >= p ? x - p : x;
            }
            return;
        }
        uint64_t nf = p - f;
        for (int j = 0; j < n; ++j) r[j] = (uint32_t)((r[j] + nf * pv[j]) % p);
    }
    void scale(uint32_t* r, int n, uint32_t c) const {
        uint32_t p = f_.p;
        if (c == 1) return;
        if (!tab_.empty()) {
            const uint8_t* mulc = tab_.data() + (size_t)c * p;
            for (int j = 0; j < n; ++j) r[j] = mulc[r[j]];
        } else {
            for (int j = 0; j < n; ++j) r[j] = (uint32_t)((uint64_t)r[j] * c % p);
        }
    }
    PrimeField f_;
    std::vector<uint8_t> tab_;
};

}  // namespace detail

struct RrefResult {
    Matrix mat;               // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each leading row
    int rank;
};

inline RrefResult rref(Matrix a) {
    PrimeField f = a.field();
    detail::RowOps ops(f);
    int rows = a.rows(), cols = a.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) std::swap(a.at(r, j), a.at(piv, j));
        uint32_t inv = f.inv(a.at(r, c));
        ops.scale(a.row(r) + c, cols - c, inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            uint32_t factor = a.at(i, c);
            if (factor) ops.submul(a.row(i) + c, a.row(r) + c, cols - c, factor);
        }
        pivots.push_back(c);
        ++r;
    }
    return RrefResult{std::move(a), std::move(pivots), r};
}

inline int rank(const Matrix& a) { return rref(a).rank; }

struct KernelBasis {
    Matrix basis;               // cols x nullity, columns span ker
    std::vector<int> free_cols; // basis[free_cols[k]][k] == 1, identity pattern
};

/* Kernel from rref: one basis column per free column; restricted to the free
   coordinates the basis is the identity, which later code exploits to read
   off coordinates without solving. */
inline KernelBasis kernel_basis_full(const Matrix& a) {
    RrefResult rr = rref(a);
    PrimeField f = a.field();
    int cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(f, cols, (int)free_cols.size());
    for (int j = 0; j < (int)free_cols.size(); ++j) {
        int fc = free_cols[j];
        k.at(fc, j) = 1;
        for (int i = 0; i < rr.rank; ++i) k.at(rr.pivots[i], j) = f.neg(rr.mat.at(i, fc));
    }
    return KernelBasis{std::move(k), std::move(free_cols)};
}

inline Matrix kernel_basis(const Matrix& a) { return kernel_basis_full(a).basis; }

/* Particular solutions of A X = B, all columns at once (single elimination).
   nullopt if any column is inconsistent. */
inline std::optional<Matrix> solve_many(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "solve_many: row mismatch");
    require(a.field() == b.field(), "solve_many: field mismatch");
    RrefResult rr = rref(Matrix::hstack(a, b));
    int n = a.cols(), m = b.cols();
    // any pivot landing in the B part means inconsistency
    for (int c : rr.pivots)
        if (c >= n) return std::nullopt;
    Matrix x(a.field(), n, m);
    for (int i = 0; i < rr.rank; ++i)
        for (int j = 0; j < m; ++j) x.at(rr.pivots[i], j) = rr.mat.at(i, n + j);
    return x;
}

/* Echelon basis of the column space: columns with basis[coords[k]][j] ==
   delta_{kj}, so the coordinates of any vector of the image are its
   restriction to the rows `coords` (same trick as kernel bases). */
struct ImageBasis {
    Matrix basis;            // rows x rank
    std::vector<int> coords; // pivot rows
};

inline ImageBasis image_basis(const Matrix& a) {
    RrefResult rr = rref(a.transpose());
    Matrix b(a.field(), a.rows(), rr.rank);
    for (int i = 0; i < rr.rank; ++i)
        for (int j = 0; j < a.rows(); ++j) b.at(j, i) = rr.mat.at(i, j);
    return ImageBasis{std::move(b), rr.pivots};
}

inline std::optional<std::vector<uint32_t>> solve(const Matrix& a, const std::vector<uint32_t>& b) {
    Matrix bm(a.field(), a.rows(), 1);
    bm.set_col(0, b);
    auto x = solve_many(a, bm);
    if (!x) return std::nullopt;
    return x->col(0);
}

inline std::optional<Matrix> inverse(const Matrix& a) {
    require(a.rows() == a.cols(), "inverse: not square");
    RrefResult rr = rref(Matrix::hstack(a, Matrix::identity(a.field(), a.rows())));
    if (rr.rank != a.rows() || (rr.rank > 0 && rr.pivots.back() >= a.cols())) return std::nullopt;
    return rr.mat.block(0, a.cols(), a.rows(), a.rows());
}

/* Reduced nonnegative rational, used for growth witnesses. */
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n, long long d) : num(n), den(d) {
        require(d > 0 && n >= 0, "Fraction: want n >= 0, d > 0");
        long long g = std::gcd(n, d);
        if (g > 1) { num /= g; den /= g; }
    }
    static Fraction integer(long long n) { return Fraction(n, 1); }

    bool operator<=(const Fraction& o) const {
        return (__int128)num * o.den <= (__int128)o.num * den;
    }
    bool operator<(const Fraction& o) const {
        return (__int128)num * o.den < (__int128)o.num * den;
    }
    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
    double value() const { return (double)num / (double)den; }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace modres
