#pragma once
// Lie algebras from structure constants, invariant bilinear forms, and
// quadratic pairs (g, r) with g = r (+) p and the dual-basis machinery that
// every downstream formula indexes over. Validation is eager: a pair object
// exists only if all structural identities hold exactly.

#include <memory>
#include <string>
#include <vector>

#include "sparse.hpp"

namespace ncweil {

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct JacobiViolation : validation_error {
    using validation_error::validation_error;
};
struct NotInvariant : validation_error {
    using validation_error::validation_error;
};
struct DegenerateForm : validation_error {
    using validation_error::validation_error;
};
struct DegenerateRestriction : validation_error {
    using validation_error::validation_error;
};
struct NotSubalgebra : validation_error {
    using validation_error::validation_error;
};

class LieAlgebra {
  public:
    // c[i][j] = bracket [x_i, x_j] as coefficients over the basis, for i < j
    LieAlgebra(std::vector<std::string> labels,
               std::map<std::pair<int, int>, SparseVec> brackets)
        : labels_(std::move(labels)) {
        n_ = static_cast<int>(labels_.size());
        table_.assign(n_ * n_, {});
        for (auto& [ij, v] : brackets) {
            auto [i, j] = ij;
            if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
                throw std::invalid_argument("bad bracket index pair");
            std::erase_if(v, [](auto& kv) { return kv.second.is_zero(); });
            table_[i * n_ + j] = v;
            SparseVec neg;
            for (const auto& [k, c] : v) neg[k] = -c;
            table_[j * n_ + i] = std::move(neg);
        }
        check_jacobi();
    }

    int dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }

    const SparseVec& bracket_basis(int i, int j) const { return table_[i * n_ + j]; }

    SparseVec bracket(const SparseVec& x, const SparseVec& y) const {
        SparseVec out;
        for (const auto& [i, xi] : x)
            for (const auto& [j, yj] : y) vec_add_scaled(out, bracket_basis(i, j), xi * yj);
        return out;
    }

    // matrix of ad x = [x, .] in the chosen basis
    SparseMatrix adjoint_matrix(const SparseVec& x) const {
        SparseMatrix m(n_, n_);
        for (int j = 0; j < n_; ++j) {
            SparseVec col = bracket(x, unit(j));
            for (const auto& [k, v] : col) m.set(k, j, v);
        }
        return m;
    }

    static SparseVec unit(int i) { return SparseVec{{i, Scalar(1)}}; }

  private:
    void check_jacobi() const {
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                for (int c = b + 1; c < n_; ++c) {
                    SparseVec s = bracket(unit(a), bracket_basis(b, c));
                    vec_add_scaled(s, bracket(unit(b), bracket_basis(c, a)), Scalar(1));
                    vec_add_scaled(s, bracket(unit(c), bracket_basis(a, b)), Scalar(1));
                    if (!s.empty())
                        throw JacobiViolation("Jacobi identity fails on basis triple (" +
                                              labels_[a] + ", " + labels_[b] + ", " +
                                              labels_[c] + ")");
                }
    }

    int n_;
    std::vector<std::string> labels_;
    std::vector<SparseVec> table_;
};

class InvariantForm {
  public:
    InvariantForm(const LieAlgebra& g, std::vector<std::vector<Scalar>> gram)
        : gram_(std::move(gram)) {
        const int n = g.dim();
        if (static_cast<int>(gram_.size()) != n)
            throw dimension_mismatch("Gram size != dim g");
        for (const auto& row : gram_)
            if (static_cast<int>(row.size()) != n)
                throw dimension_mismatch("Gram row size != dim g");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (gram_[i][j] != gram_[j][i]) throw NotInvariant("form not symmetric");
        // invariance: <[x,y],z> + <y,[x,z]> = 0 on basis triples
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    Scalar s;
                    for (const auto& [k, v] : g.bracket_basis(x, y)) s += v * gram_[k][z];
                    for (const auto& [k, v] : g.bracket_basis(x, z)) s += gram_[y][k] * v;
                    if (!s.is_zero())
                        throw NotInvariant("form not ad-invariant at basis triple (" +
                                           g.labels()[x] + ", " + g.labels()[y] + ", " +
                                           g.labels()[z] + ")");
                }
        // nondegeneracy
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!gram_[i][j].is_zero()) m.set(i, j, gram_[i][j]);
        if (rank(m) != n) throw DegenerateForm("form is degenerate");
    }

    Scalar pair(const SparseVec& x, const SparseVec& y) const {
        Scalar s;
        for (const auto& [i, xi] : x)
            for (const auto& [j, yj] : y) s += xi * yj * gram_[i][j];
        return s;
    }
    const std::vector<std::vector<Scalar>>& gram() const { return gram_; }

  private:
    std::vector<std::vector<Scalar>> gram_;
};

// dual basis {b_k} of given vectors within their span: <v_j, b_k> = delta_jk
inline std::vector<SparseVec> dual_basis_of(const std::vector<SparseVec>& vs,
                                            const InvariantForm& B) {
    const int m = static_cast<int>(vs.size());
    SparseMatrix gram(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Scalar v = B.pair(vs[i], vs[j]);
            if (!v.is_zero()) gram.set(i, j, v);
        }
    std::vector<SparseVec> duals;
    duals.reserve(m);
    for (int k = 0; k < m; ++k) {
        std::vector<Scalar> rhs(m);
        rhs[k] = Scalar(1);
        auto x = solve(gram, rhs);
        if (!x) throw DegenerateRestriction("form degenerate on span");
        SparseVec d;
        for (int j = 0; j < m; ++j) vec_add_scaled(d, vs[j], (*x)[j]);
        duals.push_back(std::move(d));
    }
    return duals;
}

// A quadratic pair: r spanned by a subset of g's basis, p = r-perp solved
// explicitly, all three dual-basis families precomputed.
class QuadraticPair {
  public:
    QuadraticPair(std::shared_ptr<const LieAlgebra> g, InvariantForm B,
                  std::vector<int> r_indices)
        : g_(std::move(g)), B_(std::move(B)), r_idx_(std::move(r_indices)) {
        const int n = g_->dim();
        std::sort(r_idx_.begin(), r_idx_.end());
        for (size_t k = 0; k + 1 < r_idx_.size(); ++k)
            if (r_idx_[k] == r_idx_[k + 1]) throw std::invalid_argument("duplicate r index");
        for (int i : r_idx_)
            if (i < 0 || i >= n) throw std::invalid_argument("r index out of range");

        for (int i : r_idx_) r_basis_.push_back(LieAlgebra::unit(i));

        // r closed under bracket
        for (size_t a = 0; a < r_idx_.size(); ++a)
            for (size_t b = a + 1; b < r_idx_.size(); ++b)
                for (const auto& [k, v] : g_->bracket_basis(r_idx_[a], r_idx_[b]))
                    if (!std::binary_search(r_idx_.begin(), r_idx_.end(), k))
                        throw NotSubalgebra("[r, r] leaves the span of r at (" +
                                            g_->labels()[r_idx_[a]] + ", " +
                                            g_->labels()[r_idx_[b]] + ")");

        // B|r nondegenerate (dual_basis_of throws otherwise)
        if (!r_idx_.empty()) {
            try {
                r_dual_ = dual_basis_of(r_basis_, B_);
            } catch (const DegenerateRestriction&) {
                throw DegenerateRestriction("B restricted to r is degenerate");
            }
        }

        // p = r-perp: kernel of the pairing rows <x_i, .> for i in r
        SparseMatrix rows(static_cast<int>(r_idx_.size()), n);
        for (size_t a = 0; a < r_idx_.size(); ++a)
            for (int j = 0; j < n; ++j) {
                Scalar v = B_.gram()[r_idx_[a]][j];
                if (!v.is_zero()) rows.set(static_cast<int>(a), j, v);
            }
        Subspace perp = kernel(rows);
        for (const auto& v : perp.basis()) p_basis_.push_back(v);
        if (static_cast<int>(p_basis_.size() + r_idx_.size()) != n)
            throw DegenerateRestriction("g != r (+) p");  // cannot happen after B|r check

        // [r, p] in p  (R-stability at the Lie algebra level)
        Subspace pspan(n, p_basis_);
        for (int i : r_idx_)
            for (const auto& pv : p_basis_) {
                SparseVec br = g_->bracket(LieAlgebra::unit(i), pv);
                if (!pspan.contains(br))
                    throw NotSubalgebra("[r, p] leaves p at r-element " + g_->labels()[i]);
            }

        if (!p_basis_.empty()) p_dual_ = dual_basis_of(p_basis_, B_);
        for (int i = 0; i < n; ++i) g_basis_.push_back(LieAlgebra::unit(i));
        g_dual_ = dual_basis_of(g_basis_, B_);
    }

    const LieAlgebra& g() const { return *g_; }
    std::shared_ptr<const LieAlgebra> g_ptr() const { return g_; }
    const InvariantForm& B() const { return B_; }
    const std::vector<int>& r_indices() const { return r_idx_; }

    const std::vector<SparseVec>& g_basis() const { return g_basis_; }
    const std::vector<SparseVec>& g_dual() const { return g_dual_; }
    const std::vector<SparseVec>& r_basis() const { return r_basis_; }
    const std::vector<SparseVec>& r_dual() const { return r_dual_; }
    const std::vector<SparseVec>& p_basis() const { return p_basis_; }
    const std::vector<SparseVec>& p_dual() const { return p_dual_; }

    int dim_r() const { return static_cast<int>(r_basis_.size()); }
    int dim_p() const { return static_cast<int>(p_basis_.size()); }

  private:
    std::shared_ptr<const LieAlgebra> g_;
    InvariantForm B_;
    std::vector<int> r_idx_;
    std::vector<SparseVec> g_basis_, g_dual_, r_basis_, r_dual_, p_basis_, p_dual_;
};

using PairPtr = std::shared_ptr<const QuadraticPair>;

inline PairPtr validate_pair(std::shared_ptr<const LieAlgebra> g, InvariantForm B,
                             std::vector<int> r_indices) {
    return std::make_shared<const QuadraticPair>(std::move(g), std::move(B),
                                                 std::move(r_indices));
}

}  // namespace ncweil
