#pragma once
// Exact sparse linear algebra over the working field: reduced row echelon
// form, kernels, particular solutions, and the subspace lattice. Everything
// is deterministic; re-verification by substitution yields literal zero.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace ncweil {

using SparseVec = std::map<int, Scalar>;  // index -> nonzero coefficient

struct dimension_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void vec_add_scaled(SparseVec& a, const SparseVec& b, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : b) {
        auto it = a.find(k);
        if (it == a.end()) {
            a.emplace(k, c * v);
        } else {
            it->second += c * v;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

inline SparseVec vec_scale(const SparseVec& a, const Scalar& c) {
    SparseVec out;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : a) out.emplace(k, c * v);
    return out;
}

class SparseMatrix {
  public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, Scalar v) {
        check(r, c);
        if (v.is_zero())
            data_[r].erase(c);
        else
            data_[r][c] = std::move(v);
    }
    Scalar at(int r, int c) const {
        check(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? Scalar(0) : it->second;
    }
    const SparseVec& row(int r) const { return data_[r]; }
    SparseVec& row_mut(int r) { return data_[r]; }

    void append_row(SparseVec r) {
        if (!r.empty() && (r.begin()->first < 0 || r.rbegin()->first >= cols_))
            throw dimension_mismatch("row index out of range");
        data_.push_back(std::move(r));
        ++rows_;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw dimension_mismatch("matrix-vector size mismatch");
        std::vector<Scalar> y(rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
        return y;
    }

    int nnz() const {
        int n = 0;
        for (const auto& r : data_) n += static_cast<int>(r.size());
        return n;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw dimension_mismatch("index out of range");
    }
    int rows_, cols_;
    std::vector<SparseVec> data_;
};

struct Echelon {
    std::vector<SparseVec> rows;  // reduced, pivot coefficient 1, sorted by pivot
    std::vector<int> pivots;      // pivot column per row
};

// reduced row echelon form; pivot choice (leftmost column, sparsest row) is
// deterministic so canonical forms are reproducible bit-for-bit
inline Echelon rref(std::vector<SparseVec> work, int ncols) {
    std::erase_if(work, [](const SparseVec& r) { return r.empty(); });
    Echelon out;
    for (int col = 0; col < ncols && !work.empty(); ++col) {
        int best = -1;
        size_t best_nnz = SIZE_MAX;
        for (size_t i = 0; i < work.size(); ++i) {
            auto it = work[i].begin();
            if (it != work[i].end() && it->first == col && work[i].size() < best_nnz) {
                best = static_cast<int>(i);
                best_nnz = work[i].size();
            }
        }
        if (best < 0) continue;
        SparseVec piv = std::move(work[best]);
        work.erase(work.begin() + best);
        Scalar lead = piv.begin()->second;
        for (auto& [k, v] : piv) v /= lead;
        for (auto& r : work) {
            auto it = r.find(col);
            if (it == r.end()) continue;
            Scalar f = -it->second;
            vec_add_scaled(r, piv, f);
        }
        std::erase_if(work, [](const SparseVec& r) { return r.empty(); });
        for (auto& r : out.rows) {
            auto it = r.find(col);
            if (it == r.end()) continue;
            Scalar f = -it->second;
            vec_add_scaled(r, piv, f);
        }
        out.rows.push_back(std::move(piv));
        out.pivots.push_back(col);
    }
    return out;
}

inline Echelon rref(const SparseMatrix& m) {
    std::vector<SparseVec> work;
    work.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) work.push_back(m.row(r));
    return rref(std::move(work), m.cols());
}

inline int rank(const SparseMatrix& m) { return static_cast<int>(rref(m).rows.size()); }

// Subspace of an ambient coordinate space, identified by its canonical
// echelon basis: two subspaces are equal iff their matrices are identical.
class Subspace {
  public:
    explicit Subspace(int ambient) : ambient_(ambient) {}
    Subspace(int ambient, std::vector<SparseVec> spanning) : ambient_(ambient) {
        auto e = rref(std::move(spanning), ambient);
        basis_ = std::move(e.rows);
        pivots_ = std::move(e.pivots);
    }

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<SparseVec>& basis() const { return basis_; }

    // reduce v against the basis; empty result means containment
    SparseVec reduce(SparseVec v) const {
        for (size_t i = 0; i < basis_.size(); ++i) {
            auto it = v.find(pivots_[i]);
            if (it == v.end()) continue;
            Scalar f = -it->second;
            vec_add_scaled(v, basis_[i], f);
        }
        return v;
    }
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    bool contains(const Subspace& other) const {
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

  private:
    int ambient_;
    std::vector<SparseVec> basis_;
    std::vector<int> pivots_;
};

inline Subspace kernel(const SparseMatrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<SparseVec> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        SparseVec v;
        v[f] = Scalar(1);
        for (size_t i = 0; i < e.rows.size(); ++i) {
            auto it = e.rows[i].find(f);
            if (it != e.rows[i].end()) v[e.pivots[i]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return Subspace(m.cols(), std::move(basis));
}

// any exact particular solution of m x = b, or nullopt if inconsistent
inline std::optional<std::vector<Scalar>> solve(const SparseMatrix& m,
                                                const std::vector<Scalar>& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw dimension_mismatch("rhs length != row count");
    std::vector<SparseVec> aug;
    aug.reserve(m.rows());
    const int bc = m.cols();
    for (int r = 0; r < m.rows(); ++r) {
        SparseVec row = m.row(r);
        if (!b[r].is_zero()) row[bc] = b[r];
        aug.push_back(std::move(row));
    }
    Echelon e = rref(std::move(aug), bc + 1);
    std::vector<Scalar> x(bc);
    for (size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == bc) return std::nullopt;  // inconsistent row
        auto it = e.rows[i].find(bc);
        if (it != e.rows[i].end()) x[e.pivots[i]] = it->second;
    }
    return x;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw dimension_mismatch("ambient mismatch");
    std::vector<SparseVec> all = a.basis();
    for (const auto& r : b.basis()) all.push_back(r);
    return Subspace(a.ambient(), std::move(all));
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw dimension_mismatch("ambient mismatch");
    const int n = a.ambient();
    const int da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace(n);
    // x = A^T u = B^T v  <=>  (u,v) in ker [A^T | -B^T]
    SparseMatrix sys(n, da + db);
    for (int i = 0; i < da; ++i)
        for (const auto& [c, v] : a.basis()[i]) sys.set(c, i, sys.at(c, i) + v);
    for (int j = 0; j < db; ++j)
        for (const auto& [c, v] : b.basis()[j]) sys.set(c, da + j, sys.at(c, da + j) - v);
    Subspace K = kernel(sys);
    std::vector<SparseVec> vecs;
    for (const auto& k : K.basis()) {
        SparseVec x;
        for (const auto& [i, coef] : k) {
            if (i >= da) break;
            vec_add_scaled(x, a.basis()[i], coef);
        }
        if (!x.empty()) vecs.push_back(std::move(x));
    }
    return Subspace(n, std::move(vecs));
}

inline bool is_direct_sum(const Subspace& a, const Subspace& b) {
    return subspace_sum(a, b).dim() == a.dim() + b.dim();
}

// representatives extending a basis of `inner` to `outer`; requires inner <= outer
inline std::vector<SparseVec> quotient_basis(const Subspace& inner, const Subspace& outer) {
    if (inner.ambient() != outer.ambient()) throw dimension_mismatch("ambient mismatch");
    if (!outer.contains(inner)) throw std::invalid_argument("not a subspace of the carrier");
    std::vector<SparseVec> reps;
    std::vector<SparseVec> cur = inner.basis();
    Subspace span = inner;
    for (const auto& v : outer.basis()) {
        if (span.contains(v)) continue;
        reps.push_back(v);
        cur.push_back(v);
        span = Subspace(outer.ambient(), cur);
    }
    return reps;
}

}  // namespace ncweil
