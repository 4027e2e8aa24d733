#pragma once
// Finite-dimensional g-modules, spinor modules for Cl(p), the Dirac operator
// matrix on V (x) S, Dirac cohomology, and the central-character comparison.

#include "dirac.hpp"

namespace ncweil {

struct FieldExtensionRequired : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoCentralCharacter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// small dense exact matrix
class Matrix {
  public:
    Matrix() : r_(0), c_(0) {}
    Matrix(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}
    static Matrix identity(int n, Scalar v = Scalar(1)) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = v;
        return m;
    }
    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator*(const Scalar& c, const Matrix& m) {
        Matrix out(m.r_, m.c_);
        for (size_t i = 0; i < m.a_.size(); ++i) out.a_[i] = c * m.a_[i];
        return out;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix out(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const Scalar& v = a.at(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < b.c_; ++j) {
                    const Scalar& w = b.at(k, j);
                    if (!w.is_zero()) out.at(i, j) += v * w;
                }
            }
        return out;
    }
    friend bool operator==(const Matrix&, const Matrix&) = default;

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }
    bool is_scalar(Scalar* value = nullptr) const {
        if (r_ != c_ || r_ == 0) return false;
        Scalar v = at(0, 0);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (at(i, j) != (i == j ? v : Scalar(0))) return false;
        if (value) *value = v;
        return true;
    }
    Matrix kronecker(const Matrix& b) const {
        Matrix out(r_ * b.r_, c_ * b.c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) {
                const Scalar& v = at(i, j);
                if (v.is_zero()) continue;
                for (int k = 0; k < b.r_; ++k)
                    for (int l = 0; l < b.c_; ++l)
                        out.at(i * b.r_ + k, j * b.c_ + l) = v * b.at(k, l);
            }
        return out;
    }
    SparseMatrix sparse() const {
        SparseMatrix out(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (!at(i, j).is_zero()) out.set(i, j, at(i, j));
        return out;
    }

  private:
    int r_, c_;
    std::vector<Scalar> a_;
};

// finite-dimensional representation as exact matrices per g-basis element
struct GModule {
    std::string name;
    int dim = 0;
    std::vector<Matrix> action;  // one per basis element of g

    void validate(const LieAlgebra& g) const {
        if (static_cast<int>(action.size()) != g.dim())
            throw dimension_mismatch("module needs one matrix per basis element");
        for (const auto& m : action)
            if (m.rows() != dim || m.cols() != dim)
                throw dimension_mismatch("module matrix size mismatch");
        for (int i = 0; i < g.dim(); ++i)
            for (int j = i + 1; j < g.dim(); ++j) {
                Matrix lhs = action[i] * action[j] + Scalar(-1) * (action[j] * action[i]);
                Matrix rhs(dim, dim);
                for (const auto& [k, c] : g.bracket_basis(i, j)) rhs += c * action[k];
                if (!(lhs == rhs))
                    throw validation_error("module is not a representation at (" +
                                           g.labels()[i] + ", " + g.labels()[j] + ")");
            }
    }

    Matrix of_vector(const SparseVec& x_g) const {
        Matrix out(dim, dim);
        for (const auto& [i, c] : x_g) out += c * action[i];
        return out;
    }
    Matrix of_pbw(const PBWElement& u) const {
        Matrix out(dim, dim);
        for (const auto& [w, c] : u.coeff()) {
            Matrix m = Matrix::identity(dim);
            for (int letter : w) m = m * action[letter];
            out += c * m;
        }
        return out;
    }
};

// Spinor module for Cl(p): an exact Witt decomposition (hyperbolic pairs plus
// at most one anisotropic line) drives a fermionic Fock construction. The
// anisotropic generator acts as lambda times the parity involution; lambda
// and the isotropic pairing coefficients must exist in the session field.
class SpinorModule {
  public:
    // odd_sign flips the anisotropic generator's scalar: Cl(odd) has two
    // minimal modules and either serves
    SpinorModule(SpacePtr p_slot, Field field, int odd_sign = +1)
        : p_slot_(std::move(p_slot)) {
        const int m = p_slot_->dim();
        // symmetric-Gauss diagonalization in p-coordinates
        std::vector<SparseVec> rem;
        for (int i = 0; i < m; ++i) rem.push_back(SparseVec{{i, Scalar(1)}});
        std::vector<SparseVec> diag;
        std::vector<Scalar> dval;
        auto ip = [&](const SparseVec& a, const SparseVec& b) {
            Scalar s;
            for (const auto& [i, ai] : a)
                for (const auto& [j, bj] : b) s += ai * bj * p_slot_->gram(i, j);
            return s;
        };
        while (!rem.empty()) {
            SparseVec pick;
            for (const auto& v : rem)
                if (!ip(v, v).is_zero()) {
                    pick = v;
                    break;
                }
            if (pick.empty()) {
                for (size_t a = 0; a < rem.size() && pick.empty(); ++a)
                    for (size_t b = a + 1; b < rem.size(); ++b)
                        if (!ip(rem[a], rem[b]).is_zero()) {
                            pick = rem[a];
                            vec_add_scaled(pick, rem[b], Scalar(1));
                            break;
                        }
            }
            if (pick.empty()) throw std::logic_error("degenerate p-form");
            Scalar dv = ip(pick, pick);
            diag.push_back(pick);
            dval.push_back(dv);
            std::vector<SparseVec> next;
            for (const auto& v : rem) {
                SparseVec w = v;
                vec_add_scaled(w, pick, -(ip(pick, v) / dv));
                if (!w.empty()) next.push_back(std::move(w));
            }
            rem = rref(std::move(next), m).rows;
        }
        // greedy hyperbolic pairing; leftover anisotropic line if dim is odd
        std::vector<int> unused(m);
        std::iota(unused.begin(), unused.end(), 0);
        std::vector<std::pair<SparseVec, SparseVec>> pairs;
        while (unused.size() >= 2) {
            bool done = false;
            for (size_t a = 0; a < unused.size() && !done; ++a)
                for (size_t b = a + 1; b < unused.size() && !done; ++b) {
                    int i = unused[a], j = unused[b];
                    auto t = sqrt_in_field(-dval[i] / dval[j], field);
                    if (!t) continue;
                    SparseVec u = diag[i];
                    vec_add_scaled(u, diag[j], *t);
                    SparseVec w = diag[i];
                    vec_add_scaled(w, diag[j], -*t);
                    w = vec_scale(w, Scalar(1) / (Scalar(2) * dval[i]));
                    pairs.emplace_back(std::move(u), std::move(w));
                    unused.erase(unused.begin() + b);
                    unused.erase(unused.begin() + a);
                    done = true;
                }
            if (!done)
                throw FieldExtensionRequired(
                    "no hyperbolic pairing over the session field");
        }
        Scalar lambda;
        bool has_odd = false;
        SparseVec zvec;
        if (!unused.empty()) {
            zvec = diag[unused[0]];
            auto l = sqrt_in_field(dval[unused[0]] / Scalar(2), field);
            if (!l)
                throw FieldExtensionRequired(
                    "anisotropic normalization needs a missing square root");
            lambda = Scalar(odd_sign) * *l;
            has_odd = true;
        }
        const int k = static_cast<int>(pairs.size());
        dim_ = 1 << k;
        // sigma on the Witt basis, then change of basis to the p-basis
        auto creation = [&](int i) {
            Matrix out(dim_, dim_);
            for (int mask = 0; mask < dim_; ++mask) {
                if (mask & (1 << i)) continue;
                auto [nm, s] = wedge_masks(Mask(1) << i, Mask(mask));
                out.at(static_cast<int>(nm), mask) = Scalar(s);
            }
            return out;
        };
        auto annihilation = [&](int i) {
            Matrix out(dim_, dim_);
            for (int mask = 0; mask < dim_; ++mask) {
                if (!(mask & (1 << i))) continue;
                int lower = __builtin_popcount(mask & ((1 << i) - 1));
                out.at(mask ^ (1 << i), mask) = Scalar((lower & 1) ? -1 : 1);
            }
            return out;
        };
        Matrix par(dim_, dim_);
        for (int mask = 0; mask < dim_; ++mask)
            par.at(mask, mask) = Scalar((__builtin_popcount(mask) & 1) ? -1 : 1);
        // p-basis vector -> Witt coordinates
        std::vector<SparseVec> witt;
        for (const auto& [u, w] : pairs) {
            witt.push_back(u);
            witt.push_back(w);
        }
        if (has_odd) witt.push_back(zvec);
        SparseMatrix rows(m, static_cast<int>(witt.size()));
        for (size_t j = 0; j < witt.size(); ++j)
            for (const auto& [c, v] : witt[j]) rows.set(c, static_cast<int>(j), v);
        sigma_gen_.reserve(m);
        for (int l = 0; l < m; ++l) {
            std::vector<Scalar> rhs(m);
            rhs[l] = Scalar(1);
            auto x = solve(rows, rhs);
            if (!x) throw std::logic_error("Witt basis not spanning");
            Matrix sig(dim_, dim_);
            for (size_t j = 0; j < witt.size(); ++j) {
                if ((*x)[j].is_zero()) continue;
                Matrix base = (j < 2 * static_cast<size_t>(k))
                                  ? (j % 2 == 0 ? creation(static_cast<int>(j / 2))
                                                : annihilation(static_cast<int>(j / 2)))
                                  : lambda * par;
                sig += (*x)[j] * base;
            }
            sigma_gen_.push_back(std::move(sig));
        }
        // the Clifford relations are structural; verify anyway
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Matrix lhs = sigma_gen_[i] * sigma_gen_[j] + sigma_gen_[j] * sigma_gen_[i];
                if (!(lhs == Matrix::identity(dim_, p_slot_->gram(i, j))))
                    throw std::logic_error("spinor construction broke Clifford relations");
            }
    }

    int dim() const { return dim_; }
    const SpacePtr& p_slot() const { return p_slot_; }
    const Matrix& sigma_generator(int j) const { return sigma_gen_[j]; }

    // representation of an arbitrary Clifford element in symbol coordinates
    Matrix sigma(const ExteriorElement& x) const {
        if (!same_space(x.space(), p_slot_))
            throw ambient_mismatch("spinor ambient mismatch");
        Matrix out(dim_, dim_);
        std::map<Mask, CliffordExpansion> memo;
        for (const auto& [mask, c] : x.coeff())
            for (const auto& [w, cw] : clifford_word_expansion(p_slot_, mask, memo)) {
                Matrix m = Matrix::identity(dim_);
                for (int j : w) m = m * sigma_gen_[j];
                out += (c * cw) * m;
            }
        return out;
    }

  private:
    SpacePtr p_slot_;
    int dim_ = 1;
    std::vector<Matrix> sigma_gen_;
};

// the matrix of D^p on V (x) S (V-slot major in the Kronecker ordering)
inline Matrix dirac_matrix(const GModule& V, const SpinorModule& S) {
    const auto& sp = S.p_slot();
    const int n = V.dim * S.dim();
    Matrix out(n, n);
    for (int l = 0; l < sp->dim(); ++l) {
        Matrix rv = V.of_vector(sp->basis_vector_g(l));
        Matrix sq = S.sigma(vector_to_exterior(sp, sp->dual_vector(l)));
        out += rv.kronecker(sq);
    }
    ExteriorElement gamma = cartan_element(sp);
    if (!gamma.is_zero())
        out += Scalar(-1) * Matrix::identity(V.dim).kronecker(S.sigma(gamma));
    return out;
}

// xi-action of an r-element on V (x) S: rho(x) (x) I + I (x) sigma(alpha(x))
inline Matrix xi_action(const DiracContext& ctx, const GModule& V, const SpinorModule& S,
                        int r_letter) {
    return V.of_vector(LieAlgebra::unit(ctx.pair->r_indices()[r_letter]))
               .kronecker(Matrix::identity(S.dim())) +
           Matrix::identity(V.dim).kronecker(S.sigma(ctx.alpha[r_letter]));
}
inline Matrix xi_action_pbw(const DiracContext& ctx, const GModule& V,
                            const SpinorModule& S, const PBWElement& u_r) {
    const int n = V.dim * S.dim();
    Matrix out(n, n);
    for (const auto& [w, c] : u_r.coeff()) {
        Matrix m = Matrix::identity(n);
        for (int letter : w) m = m * xi_action(ctx, V, S, letter);
        out += c * m;
    }
    return out;
}

struct DiracCohomology {
    int ambient = 0;
    Subspace ker;
    Subspace img;
    Subspace overlap;                  // Ker cap Im
    std::vector<SparseVec> quotient;   // representatives of H_D
    int dim() const { return static_cast<int>(quotient.size()); }
};

inline DiracCohomology dirac_cohomology(const Matrix& D) {
    const int n = D.rows();
    SparseMatrix sm = D.sparse();
    DiracCohomology out{n, kernel(sm), Subspace(n), Subspace(n), {}};
    std::vector<SparseVec> cols;
    for (int j = 0; j < n; ++j) {
        SparseVec col;
        for (int i = 0; i < n; ++i)
            if (!D.at(i, j).is_zero()) col[i] = D.at(i, j);
        if (!col.empty()) cols.push_back(std::move(col));
    }
    out.img = Subspace(n, std::move(cols));
    out.overlap = subspace_intersect(out.ker, out.img);
    out.quotient = quotient_basis(out.overlap, out.ker);
    return out;
}

// matrix of an ambient operator on H_D = Ker/ (Ker cap Im); the operator must
// preserve both (true for every xi-action since [D, xi(x)] = 0)
inline Matrix quotient_action(const DiracCohomology& H, const Matrix& op) {
    const int q = H.dim();
    const int n = H.ambient;
    std::vector<SparseVec> basis = H.quotient;
    for (const auto& v : H.overlap.basis()) basis.push_back(v);
    SparseMatrix rows(n, static_cast<int>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j)
        for (const auto& [c, v] : basis[j]) rows.set(c, static_cast<int>(j), v);
    Matrix out(q, q);
    for (int j = 0; j < q; ++j) {
        std::vector<Scalar> img(n);
        for (const auto& [c, v] : H.quotient[j])
            for (int i = 0; i < n; ++i)
                if (!op.at(i, c).is_zero()) img[i] += op.at(i, c) * v;
        auto x = solve(rows, img);
        if (!x) throw std::logic_error("operator does not preserve H_D");
        for (int i = 0; i < q; ++i) out.at(i, j) = (*x)[i];
    }
    return out;
}

// characteristic polynomial by Faddeev-LeVerrier, exact; index = power
inline std::vector<Scalar> char_poly(const Matrix& A) {
    const int n = A.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = Scalar(1);
    Matrix M = Matrix(n, n);
    for (int k = 1; k <= n; ++k) {
        M = A * M + Matrix::identity(n, c[n - k + 1]);
        Matrix AM = A * M;
        Scalar tr;
        for (int i = 0; i < n; ++i) tr += AM.at(i, i);
        c[n - k] = Scalar(-1) * tr / Scalar(k);
    }
    return c;
}

// rational roots with multiplicity, plus the degree of any unresolved factor
struct Spectrum {
    std::vector<std::pair<Scalar, int>> roots;  // (eigenvalue, multiplicity)
    int unresolved_degree = 0;
};

inline Spectrum rational_eigenvalues(const Matrix& A) {
    Spectrum out;
    std::vector<Scalar> p = char_poly(A);
    auto eval = [&](const std::vector<Scalar>& q, const Scalar& x) {
        Scalar acc;
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) acc = acc * x + q[i];
        return acc;
    };
    auto deflate = [&](std::vector<Scalar> q, const Scalar& r) {
        // synthetic division by (x - r)
        std::vector<Scalar> o(q.size() - 1);
        Scalar carry;
        for (int i = static_cast<int>(q.size()) - 1; i >= 1; --i) {
            o[i - 1] = q[i] + carry;
            carry = o[i - 1] * r;
        }
        return o;
    };
    while (p.size() > 1) {
        // strip zero roots first
        if (p[0].is_zero()) {
            out.roots.emplace_back(Scalar(0), 0);
            auto& e = out.roots.back();
            while (p.size() > 1 && p[0].is_zero()) {
                p.erase(p.begin());
                ++e.second;
            }
            continue;
        }
        // candidate p/q from divisors of the constant and leading numerators
        bool found = false;
        mpz_class a0num = p[0].is_rational() ? p[0].real().get_num() : mpz_class(0);
        mpz_class lead = p.back().real().get_num();
        mpz_class a0den = p[0].real().get_den(), leadden = p.back().real().get_den();
        // clear denominators: work with a0num*leadden and lead*a0den
        mpz_class A0 = abs(a0num * leadden), L = abs(lead * a0den);
        if (p[0].is_rational() && p.back().is_rational() && A0 != 0) {
            std::vector<mpz_class> divs_a, divs_l;
            auto divisors = [](const mpz_class& v, std::vector<mpz_class>& out_divs) {
                for (mpz_class d = 1; d * d <= v; ++d)
                    if (v % d == 0) {
                        out_divs.push_back(d);
                        out_divs.push_back(v / d);
                    }
            };
            if (A0 < 100000 && L < 100000) {
                divisors(A0, divs_a);
                divisors(L, divs_l);
                for (const auto& pa : divs_a) {
                    for (const auto& ql : divs_l) {
                        for (int sgn : {1, -1}) {
                            mpq_class q(sgn * pa, ql);
                            q.canonicalize();
                            Scalar cand(q);
                            if (eval(p, cand).is_zero()) {
                                int mult = 0;
                                while (p.size() > 1 && eval(p, cand).is_zero()) {
                                    p = deflate(p, cand);
                                    ++mult;
                                }
                                out.roots.emplace_back(cand, mult);
                                found = true;
                                break;
                            }
                        }
                        if (found) break;
                    }
                    if (found) break;
                }
            }
        }
        if (!found) break;
    }
    out.unresolved_degree = static_cast<int>(p.size()) - 1;
    return out;
}

struct CentralCharacterReport {
    bool has_central_character = false;
    Scalar chi;                 // the scalar by which z acts on V
    int dim_hd = 0;
    bool matches = false;       // xi(eta_R(z)) acts on H_D by exactly chi
    Matrix eta_action;          // the H_D-action of xi(eta_R(z))
};

// Corollary-level check: for V with a central character, the action of
// xi(eta_R(z)) on H_D equals chi(z). A non-scalar rho(z) is reported, not
// thrown through.
inline CentralCharacterReport verify_central_character(const DiracContext& ctx,
                                                       const GModule& V,
                                                       const SpinorModule& S,
                                                       const PBWElement& z) {
    CentralCharacterReport rep;
    Matrix rz = V.of_pbw(z);
    Scalar chi;
    if (!rz.is_scalar(&chi)) return rep;  // NoCentralCharacter outcome
    rep.has_central_character = true;
    rep.chi = chi;
    Matrix D = dirac_matrix(V, S);
    DiracCohomology H = dirac_cohomology(D);
    rep.dim_hd = H.dim();
    PBWElement eta = eta_R(ctx, z);
    Matrix act = xi_action_pbw(ctx, V, S, eta);
    rep.eta_action = quotient_action(H, act);
    rep.matches = (rep.eta_action == Matrix::identity(H.dim(), chi));
    return rep;
}

}  // namespace ncweil
