#pragma once
// Finite-dimensional g-differential spaces supplied as exact matrices, and
// the two Cartan-model differentials evaluated against them. Manifolds are
// out of reach here; finite models exercise the formulas fully.

#include "mixed.hpp"
#include "weil.hpp"

namespace ncweil {

struct inconsistent_datum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exact model of a g-differential algebra: basis parities, the operators
// d, i_{x_k}, L_{x_k} per g-basis vector, and the multiplication tensor
struct GDiffDatum {
    LiePtr g;
    int dim = 0;
    int unit = 0;                   // index of the algebra unit
    std::vector<int> parity;        // 0/1 per basis element
    SparseMatrix d;
    std::vector<SparseMatrix> i_ops;  // one per g-basis vector
    std::vector<SparseMatrix> L_ops;
    // mult[a*dim+b] = expansion of (basis a)(basis b)
    std::vector<SparseVec> mult;

    SparseVec apply(const SparseMatrix& m, const SparseVec& v) const {
        SparseVec out;
        for (const auto& [c, val] : v)
            for (int r = 0; r < dim; ++r) {
                Scalar e = m.at(r, c);
                if (!e.is_zero()) {
                    out[r] += e * val;
                    if (out[r].is_zero()) out.erase(r);
                }
            }
        return out;
    }
    SparseVec i_of(const SparseVec& a_g, const SparseVec& v) const {
        SparseVec out;
        for (const auto& [k, c] : a_g) {
            SparseVec t = apply(i_ops[k], v);
            vec_add_scaled(out, t, c);
        }
        return out;
    }

    // the three super-Lie relations, d^2 = 0, and unit/parity consistency
    void validate() const {
        const int n = g->dim();
        auto comm = [&](const SparseMatrix& A, const SparseMatrix& B, int sign) {
            // A B - sign * B A as a matrix
            SparseMatrix out(dim, dim);
            for (int c = 0; c < dim; ++c) {
                SparseVec col;
                for (int r = 0; r < dim; ++r) {
                    Scalar v = B.at(r, c);
                    if (!v.is_zero()) col[r] = v;
                }
                SparseVec ab = apply(A, col);
                SparseVec col2;
                for (int r = 0; r < dim; ++r) {
                    Scalar v = A.at(r, c);
                    if (!v.is_zero()) col2[r] = v;
                }
                SparseVec ba = apply(B, col2);
                vec_add_scaled(ab, ba, Scalar(-sign));
                for (const auto& [r, v] : ab) out.set(r, c, v);
            }
            return out;
        };
        SparseMatrix zero(dim, dim);
        for (int a = 0; a < n; ++a) {
            // [i_a, d] = i_a d + d i_a = L_a   (both odd)
            SparseMatrix lhs = comm(i_ops[a], d, -1);
            if (!(lhs == L_ops[a])) throw inconsistent_datum("[i,d] != L on datum");
            for (int b = 0; b < n; ++b) {
                SparseVec br = g->bracket_basis(a, b);
                SparseMatrix want(dim, dim);
                for (const auto& [k, c] : br)
                    for (int r = 0; r < dim; ++r)
                        for (int cc = 0; cc < dim; ++cc) {
                            Scalar v = i_ops[k].at(r, cc);
                            if (!v.is_zero()) want.set(r, cc, want.at(r, cc) + c * v);
                        }
                if (!(comm(L_ops[a], i_ops[b], 1) == want))
                    throw inconsistent_datum("[L,i] != i_[] on datum");
                SparseMatrix wantL(dim, dim);
                for (const auto& [k, c] : br)
                    for (int r = 0; r < dim; ++r)
                        for (int cc = 0; cc < dim; ++cc) {
                            Scalar v = L_ops[k].at(r, cc);
                            if (!v.is_zero()) wantL.set(r, cc, wantL.at(r, cc) + c * v);
                        }
                if (!(comm(L_ops[a], L_ops[b], 1) == wantL))
                    throw inconsistent_datum("[L,L] != L_[] on datum");
            }
        }
        if (!(comm(d, d, -1) == zero)) throw inconsistent_datum("d^2 != 0 on datum");
    }
};

// B = C, trivial structure
inline GDiffDatum trivial_datum(LiePtr g) {
    GDiffDatum b;
    b.g = std::move(g);
    b.dim = 1;
    b.unit = 0;
    b.parity = {0};
    b.d = SparseMatrix(1, 1);
    const int n = b.g->dim();
    b.i_ops.assign(n, SparseMatrix(1, 1));
    b.L_ops.assign(n, SparseMatrix(1, 1));
    b.mult.assign(1, SparseVec{{0, Scalar(1)}});
    return b;
}

// B = Lambda(W) with contraction, adjoint action, the transported Koszul
// differential, and the wedge product (Koszul model of Lambda(g*))
inline GDiffDatum exterior_datum(const SpacePtr& sp) {
    GDiffDatum b;
    b.g = sp->pair().g_ptr();
    const int m = sp->dim();
    const int n = b.g->dim();
    b.dim = 1 << m;
    b.unit = 0;
    b.parity.resize(b.dim);
    for (int mask = 0; mask < b.dim; ++mask) b.parity[mask] = mask_degree(mask) & 1;
    auto mat_of = [&](auto&& op) {
        SparseMatrix out(b.dim, b.dim);
        for (int c = 0; c < b.dim; ++c) {
            ExteriorElement img = op(ExteriorElement(sp, {{Mask(c), Scalar(1)}}));
            for (const auto& [mm, v] : img.coeff()) out.set(static_cast<int>(mm), c, v);
        }
        return out;
    };
    b.d = mat_of([&](const ExteriorElement& x) { return koszul_differential(x); });
    for (int a = 0; a < n; ++a) {
        SparseVec av = LieAlgebra::unit(a);
        b.i_ops.push_back(
            mat_of([&](const ExteriorElement& x) { return contract_g(av, x); }));
        b.L_ops.push_back(
            mat_of([&](const ExteriorElement& x) { return lie_derivative(av, x); }));
    }
    b.mult.resize(static_cast<size_t>(b.dim) * b.dim);
    for (int x = 0; x < b.dim; ++x)
        for (int y = 0; y < b.dim; ++y) {
            auto [mm, s] = wedge_masks(Mask(x), Mask(y));
            if (s != 0) b.mult[static_cast<size_t>(x) * b.dim + y] = {{int(mm), Scalar(s)}};
        }
    return b;
}

// elements of S(g) (x) B and U(g) (x) B against a datum
struct SymDatumKey {
    Word s;
    int b = 0;
    friend auto operator<=>(const SymDatumKey&, const SymDatumKey&) = default;
};
using SymDatumElement = std::map<SymDatumKey, Scalar>;

struct PbwDatumKey {
    Word u;
    int b = 0;
    friend auto operator<=>(const PbwDatumKey&, const PbwDatumKey&) = default;
};
using PbwDatumElement = std::map<PbwDatumKey, Scalar>;

namespace detail {

template <class K>
inline void datum_add(std::map<K, Scalar>& out, K k, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = out.try_emplace(std::move(k), v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) out.erase(it);
    }
}

}  // namespace detail

// Prop-style commutative Cartan differential on (S(g*) (x) B)^g:
//   d_G = I (x) d_B - sum_k s_{b_k} (x) i_{a_k}
// (the dual-basis symbol multiplies the S-slot; d_G^2 = 0 on invariants)
inline SymDatumElement cartan_differential_commutative(const QuadraticPair& pair,
                                                       const GDiffDatum& datum,
                                                       const SymDatumElement& x) {
    SymDatumElement out;
    const int n = pair.g().dim();
    for (const auto& [key, c] : x) {
        SparseVec col{{key.b, Scalar(1)}};
        SparseVec db = datum.apply(datum.d, col);
        for (const auto& [r, v] : db) detail::datum_add(out, SymDatumKey{key.s, r}, c * v);
        for (int k = 0; k < n; ++k) {
            SparseVec ib = datum.apply(datum.i_ops[k], col);
            if (ib.empty()) continue;
            for (const auto& [j, bc] : pair.g_dual()[k]) {
                Word s = key.s;
                s.push_back(j);
                std::sort(s.begin(), s.end());
                for (const auto& [r, v] : ib)
                    detail::datum_add(out, SymDatumKey{s, r}, -c * bc * v);
            }
        }
    }
    return out;
}

// noncommutative Cartan differential on (U(g) (x) B)^g:
//   d_G = I (x) d_B - 1/2 sum_k (u^L_{a_k} + u^R_{a_k}) (x) i_{b_k}
//         + 1/4 I (x) i_gamma
// with i_gamma the triple contraction of gamma_g through the datum's i-maps
inline PbwDatumElement nc_cartan_differential(const PairPtr& pair_ptr,
                                              const GDiffDatum& datum, int cap,
                                              const PbwDatumElement& x) {
    PbwDatumElement out;
    const QuadraticPair& pair = *pair_ptr;
    const int n = pair.g().dim();
    const auto& L = pair.g();
    auto g_slot = QuadraticSpace::g_slot(pair_ptr);
    ExteriorElement gamma = cartan_element(g_slot);
    for (const auto& [key, c] : x) {
        if (static_cast<int>(key.u.size()) + 1 > cap)
            throw FiltrationOverflow("nc Cartan differential exceeds cap");
        SparseVec col{{key.b, Scalar(1)}};
        SparseVec db = datum.apply(datum.d, col);
        for (const auto& [r, v] : db) detail::datum_add(out, PbwDatumKey{key.u, r}, c * v);
        for (int k = 0; k < n; ++k) {
            SparseVec ib = datum.i_of(pair.g_dual()[k], col);
            if (ib.empty()) continue;
            std::map<Word, Scalar> sym;
            Word left{k};
            left.insert(left.end(), key.u.begin(), key.u.end());
            detail::normal_order_into(L, std::move(left), Scalar(-1, 2), sym);
            Word right = key.u;
            right.push_back(k);
            detail::normal_order_into(L, std::move(right), Scalar(-1, 2), sym);
            for (const auto& [w, cu] : sym)
                for (const auto& [r, v] : ib)
                    detail::datum_add(out, PbwDatumKey{w, r}, c * cu * v);
        }
        // 1/4 i_gamma through the datum: scalar and operator contractions in
        // the pinned matching order
        SparseVec acc;
        for (int mm = 0; mm < n; ++mm) {
            ExteriorElement g1 = contract_g(LieAlgebra::unit(mm), gamma);
            if (g1.is_zero()) continue;
            for (int kk = 0; kk < n; ++kk) {
                ExteriorElement g2 = contract_g(LieAlgebra::unit(kk), g1);
                if (g2.is_zero()) continue;
                for (int ll = 0; ll < n; ++ll) {
                    Scalar sc = contract_g(LieAlgebra::unit(ll), g2).at(0);
                    if (sc.is_zero()) continue;
                    SparseVec t = datum.i_of(pair.g_dual()[mm], col);
                    t = datum.i_of(pair.g_dual()[kk], t);
                    t = datum.i_of(pair.g_dual()[ll], t);
                    vec_add_scaled(acc, t, sc);
                }
            }
        }
        for (const auto& [r, v] : acc)
            detail::datum_add(out, PbwDatumKey{key.u, r}, Scalar(1, 24) * c * v);
    }
    return out;
}

// (x (x) b1) . (y (x) b2) = xy (x) mu(Exp(-1/2 sum_k i1_{a_k} i2_{b_k})(b1 (x) b2))
inline PbwDatumElement odot_product(const QuadraticPair& pair, const GDiffDatum& datum,
                                    int cap, const PbwDatumElement& x,
                                    const PbwDatumElement& y) {
    PbwDatumElement out;
    const int n = pair.g().dim();
    const auto& L = pair.g();
    for (const auto& [k1, c1] : x)
        for (const auto& [k2, c2] : y) {
            if (static_cast<int>(k1.u.size() + k2.u.size()) > cap)
                throw FiltrationOverflow("odot product exceeds cap");
            std::map<Word, Scalar> uw;
            Word w = k1.u;
            w.insert(w.end(), k2.u.begin(), k2.u.end());
            detail::normal_order_into(L, std::move(w), Scalar(1), uw);
            // Exp on the B (x) B slot
            std::map<std::pair<int, int>, Scalar> cur{{{k1.b, k2.b}, Scalar(1)}};
            SparseVec merged;
            Scalar coeff(1);
            for (int iter = 0; !cur.empty(); ++iter) {
                if (iter > 2 * datum.dim + 2)
                    throw inconsistent_datum("odot exponential does not terminate");
                for (const auto& [bb, c] : cur) {
                    const SparseVec& prod =
                        datum.mult[static_cast<size_t>(bb.first) * datum.dim + bb.second];
                    vec_add_scaled(merged, prod, coeff * c);
                }
                std::map<std::pair<int, int>, Scalar> nxt;
                for (const auto& [bb, c] : cur) {
                    Scalar sgn(datum.parity[bb.first] ? -1 : 1);
                    for (int k = 0; k < n; ++k) {
                        SparseVec i2 = datum.i_of(pair.g_dual()[k],
                                                  SparseVec{{bb.second, Scalar(1)}});
                        if (i2.empty()) continue;
                        SparseVec i1 = datum.apply(datum.i_ops[k],
                                                   SparseVec{{bb.first, Scalar(1)}});
                        for (const auto& [r1, v1] : i1)
                            for (const auto& [r2, v2] : i2) {
                                Scalar v = sgn * c * v1 * v2;
                                auto [it, fresh] = nxt.try_emplace({r1, r2}, v);
                                if (!fresh) it->second += v;
                            }
                    }
                }
                std::erase_if(nxt, [](const auto& kv) { return kv.second.is_zero(); });
                cur = std::move(nxt);
                coeff = coeff * Scalar(-1, 2) / Scalar(iter + 1);
            }
            for (const auto& [w2, cu] : uw)
                for (const auto& [r, v] : merged)
                    detail::datum_add(out, PbwDatumKey{w2, r}, c1 * c2 * cu * v);
        }
    return out;
}

}  // namespace ncweil
