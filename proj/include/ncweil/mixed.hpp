#pragma once
// U(g) (x) Lambda(W) with the Clifford slot in exterior (symbol) coordinates:
// the carrier of the noncommutative Weil algebra (W = g), of the point-case
// induction algebra (W = p), and of their differentials ad D. U(g) sits in
// even degree, so the product has no cross signs: (x(x)w)(y(x)e) = xy(x)w.e.

#include "exterior.hpp"
#include "pbw.hpp"

namespace ncweil {

struct MixedKey {
    Word u;
    Mask m = 0;
    friend auto operator<=>(const MixedKey&, const MixedKey&) = default;
};

class MixedElement {
  public:
    MixedElement(LiePtr g, SpacePtr W, int cap) : g_(std::move(g)), W_(std::move(W)), cap_(cap) {}
    MixedElement(LiePtr g, SpacePtr W, int cap, std::map<MixedKey, Scalar> coeff)
        : g_(std::move(g)), W_(std::move(W)), cap_(cap), c_(std::move(coeff)) {
        std::erase_if(c_, [](const auto& kv) { return kv.second.is_zero(); });
        for (const auto& [k, v] : c_)
            if (static_cast<int>(k.u.size()) > cap_)
                throw FiltrationOverflow("mixed monomial exceeds cap");
    }

    static MixedElement unit(LiePtr g, SpacePtr W, int cap) {
        return MixedElement(std::move(g), std::move(W), cap, {{MixedKey{}, Scalar(1)}});
    }
    static MixedElement from_pbw(const PBWElement& u, SpacePtr W) {
        MixedElement out(u.algebra(), std::move(W), u.cap());
        for (const auto& [w, v] : u.coeff()) out.c_.emplace(MixedKey{w, 0}, v);
        return out;
    }
    static MixedElement from_exterior(LiePtr g, const ExteriorElement& x, int cap) {
        MixedElement out(std::move(g), x.space(), cap);
        for (const auto& [m, v] : x.coeff()) out.c_.emplace(MixedKey{{}, m}, v);
        return out;
    }

    const LiePtr& algebra() const { return g_; }
    const SpacePtr& slot() const { return W_; }
    int cap() const { return cap_; }
    const std::map<MixedKey, Scalar>& coeff() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    int u_degree() const {
        int d = 0;
        for (const auto& [k, v] : c_) d = std::max<int>(d, static_cast<int>(k.u.size()));
        return d;
    }
    // parity = Clifford parity (U(g) is even); throws on mixed parity
    int parity_or_throw() const {
        int p = -1;
        for (const auto& [k, v] : c_) {
            int pm = mask_degree(k.m) & 1;
            if (p < 0) p = pm;
            else if (p != pm) throw std::invalid_argument("mixed parity element");
        }
        return p < 0 ? 0 : p;
    }

    void add_term(MixedKey k, const Scalar& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = c_.try_emplace(std::move(k), v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    MixedElement operator-() const {
        MixedElement out(g_, W_, cap_);
        for (const auto& [k, v] : c_) out.c_.emplace(k, -v);
        return out;
    }
    MixedElement& operator+=(const MixedElement& o) {
        require_same(o);
        for (const auto& [k, v] : o.c_) add_term(k, v);
        return *this;
    }
    MixedElement& operator-=(const MixedElement& o) {
        require_same(o);
        for (const auto& [k, v] : o.c_) add_term(k, -v);
        return *this;
    }
    friend MixedElement operator+(MixedElement a, const MixedElement& b) { return a += b; }
    friend MixedElement operator-(MixedElement a, const MixedElement& b) { return a -= b; }
    friend MixedElement operator*(const Scalar& c, const MixedElement& a) {
        MixedElement out(a.g_, a.W_, a.cap_);
        if (c.is_zero()) return out;
        for (const auto& [k, v] : a.c_) out.c_.emplace(k, c * v);
        return out;
    }
    friend bool operator==(const MixedElement& a, const MixedElement& b) {
        return a.g_ == b.g_ && same_space(a.W_, b.W_) && a.c_ == b.c_;
    }

    void require_same(const MixedElement& o) const {
        if (g_ != o.g_ || !same_space(W_, o.W_))
            throw ambient_mismatch("mixed ambient mismatch");
        if (cap_ != o.cap_) throw FiltrationOverflow("mixed filtration caps");
    }

  private:
    LiePtr g_;
    SpacePtr W_;
    int cap_;
    std::map<MixedKey, Scalar> c_;
};

inline MixedElement mixed_product(const MixedElement& a, const MixedElement& b) {
    a.require_same(b);
    if (a.u_degree() + b.u_degree() > a.cap())
        throw FiltrationOverflow("mixed product exceeds cap " + std::to_string(a.cap()));
    MixedElement out(a.algebra(), a.slot(), a.cap());
    const auto& L = *a.algebra();
    for (const auto& [k1, c1] : a.coeff())
        for (const auto& [k2, c2] : b.coeff()) {
            std::map<Word, Scalar> uw;
            Word w = k1.u;
            w.insert(w.end(), k2.u.begin(), k2.u.end());
            detail::normal_order_into(L, std::move(w), Scalar(1), uw);
            ExteriorElement cl =
                clifford_product(ExteriorElement(a.slot(), {{k1.m, Scalar(1)}}),
                                 ExteriorElement(a.slot(), {{k2.m, Scalar(1)}}));
            for (const auto& [ww, cu] : uw)
                for (const auto& [mm, cc] : cl.coeff())
                    out.add_term(MixedKey{ww, mm}, c1 * c2 * cu * cc);
        }
    return out;
}

// D_W = sum_l u_{w_l} (x) c_{w'_l} - 1 (x) gamma_W over any basis of W and its
// dual; dual-basis independent. W = g gives the Weil-algebra element, W = p
// the cubic Dirac element.
inline MixedElement dirac_element(const SpacePtr& W, int cap) {
    LiePtr g = W->pair().g_ptr();
    MixedElement out(g, W, cap);
    for (int l = 0; l < W->dim(); ++l) {
        const SparseVec gv = W->basis_vector_g(l);
        for (const auto& [i, cu] : gv)
            for (const auto& [j, cv] : W->dual_vector(l))
                out.add_term(MixedKey{Word{i}, Mask(1) << j}, cu * cv);
    }
    ExteriorElement gamma = cartan_element(W);
    for (const auto& [m, c] : gamma.coeff()) out.add_term(MixedKey{{}, m}, -c);
    return out;
}

// super-adjoint: ad D (x) = D x - (-1)^|x| x D
inline MixedElement ad_dirac(const MixedElement& D, const MixedElement& x) {
    Scalar sign(x.parity_or_throw() ? 1 : -1);
    return mixed_product(D, x) + sign * mixed_product(x, D);
}

// The differential written out term by term, cross-validating ad D:
//   d(x (x) w) = sum_k [ ad u_{a_k}(x) (x) b_k ^ w
//                        + 1/2 (u_{a_k} x + x u_{a_k}) (x) i_{b_k} w ]
//                + x (x) d_Koszul w + 1/4 x (x) i_gamma w
// over dual bases {a_k},{b_k} of W. Under the project sign law the first two
// signs come out +, + (the bracket with c_q is exactly i_q).
inline MixedElement mixed_differential_explicit(const MixedElement& x) {
    const auto& W = x.slot();
    const auto& g = x.algebra();
    const auto& L = *g;
    const int m = W->dim();
    ExteriorElement gamma = cartan_element(W);
    MixedElement out(g, W, x.cap());
    for (const auto& [key, c] : x.coeff()) {
        ExteriorElement mono(W, {{key.m, Scalar(1)}});
        for (int k = 0; k < m; ++k) {
            const SparseVec a_g = W->basis_vector_g(k);
            // ad u_{a_k}(x) (x) (b_k ^ w)
            std::map<Word, Scalar> adw;
            for (size_t t = 0; t < key.u.size(); ++t) {
                SparseVec br = L.bracket(a_g, LieAlgebra::unit(key.u[t]));
                for (const auto& [kk, v] : br) {
                    Word nw = key.u;
                    nw[t] = kk;
                    detail::normal_order_into(L, std::move(nw), v, adw);
                }
            }
            if (!adw.empty()) {
                ExteriorElement bw =
                    wedge(vector_to_exterior(W, W->dual_vector(k)), mono);
                for (const auto& [ww, cu] : adw)
                    for (const auto& [mm, cc] : bw.coeff())
                        out.add_term(MixedKey{ww, mm}, c * cu * cc);
            }
            // 1/2 (u_a x + x u_a) (x) i_{b_k} w
            ExteriorElement iw = contract(W->dual_vector(k), mono);
            if (!iw.is_zero()) {
                std::map<Word, Scalar> sym;
                for (const auto& [i, cu] : a_g) {
                    Word left{i};
                    left.insert(left.end(), key.u.begin(), key.u.end());
                    detail::normal_order_into(L, std::move(left), cu * Scalar(1, 2), sym);
                    Word right = key.u;
                    right.push_back(i);
                    detail::normal_order_into(L, std::move(right), cu * Scalar(1, 2), sym);
                }
                for (const auto& [ww, cu] : sym)
                    for (const auto& [mm, cc] : iw.coeff())
                        out.add_term(MixedKey{ww, mm}, c * cu * cc);
            }
        }
        ExteriorElement tail =
            koszul_differential(mono) + Scalar(1, 4) * contract_by_cubic(gamma, mono);
        for (const auto& [mm, cc] : tail.coeff()) out.add_term(MixedKey{key.u, mm}, c * cc);
    }
    return out;
}

// i_a = I_{U(g)} (x) i_a  (contraction through B; sees only the W-component)
inline MixedElement mixed_contract(const SparseVec& a_g, const MixedElement& x) {
    auto p = x.slot()->pairings_g(a_g);
    MixedElement out(x.algebra(), x.slot(), x.cap());
    for (const auto& [key, c] : x.coeff()) {
        ExteriorElement t(x.slot());
        detail::contract_mono(p, key.m, c, t);
        for (const auto& [mm, cc] : t.coeff()) out.add_term(MixedKey{key.u, mm}, cc);
    }
    return out;
}

// L_a: adjoint action on both slots (requires [a, W] inside span W)
inline MixedElement mixed_lie(const SparseVec& a_g, const MixedElement& x) {
    MixedElement out(x.algebra(), x.slot(), x.cap());
    const auto& L = *x.algebra();
    for (const auto& [key, c] : x.coeff()) {
        std::map<Word, Scalar> adw;
        for (size_t t = 0; t < key.u.size(); ++t) {
            SparseVec br = L.bracket(a_g, LieAlgebra::unit(key.u[t]));
            for (const auto& [kk, v] : br) {
                Word nw = key.u;
                nw[t] = kk;
                detail::normal_order_into(L, std::move(nw), v, adw);
            }
        }
        for (const auto& [ww, cu] : adw) out.add_term(MixedKey{ww, key.m}, c * cu);
        ExteriorElement lm =
            lie_derivative(a_g, ExteriorElement(x.slot(), {{key.m, Scalar(1)}}));
        for (const auto& [mm, cc] : lm.coeff()) out.add_term(MixedKey{key.u, mm}, c * cc);
    }
    return out;
}

// ----------------------------------------------------------------- slices

// coordinatization of the U-degree <= N slice of U(g) (x) Lambda(W)
struct MixedSlice {
    LiePtr g;
    SpacePtr W;
    int N = 0;
    int cap = 0;  // cap carried by elements reconstructed from coordinates
    std::vector<MixedKey> keys;
    std::map<MixedKey, int> index;

    MixedSlice(LiePtr g_, SpacePtr W_, int N_, int cap_)
        : g(std::move(g_)), W(std::move(W_)), N(N_), cap(cap_) {
        for (const auto& w : monomials_upto(g->dim(), N))
            for (Mask m = 0; m < (Mask(1) << W->dim()); ++m) keys.push_back({w, m});
        for (size_t i = 0; i < keys.size(); ++i) index[keys[i]] = static_cast<int>(i);
    }
    int dim() const { return static_cast<int>(keys.size()); }

    SparseVec coords(const MixedElement& x) const {
        SparseVec v;
        for (const auto& [k, c] : x.coeff()) {
            auto it = index.find(k);
            if (it == index.end()) throw FiltrationOverflow("element escapes slice");
            v[it->second] = c;
        }
        return v;
    }
    MixedElement element(const SparseVec& v) const {
        MixedElement out(g, W, cap);
        for (const auto& [i, c] : v) out.add_term(keys[i], c);
        return out;
    }
};

template <class Op>
SparseMatrix operator_matrix(Op&& op, const MixedSlice& in, const MixedSlice& out_slice) {
    SparseMatrix m(out_slice.dim(), in.dim());
    for (int ci = 0; ci < in.dim(); ++ci) {
        MixedElement img = op(in.element(SparseVec{{ci, Scalar(1)}}));
        for (const auto& [k, c] : img.coeff()) m.set(out_slice.index.at(k), ci, c);
    }
    return m;
}

// kernel of the stacked L_x matrices over the r-basis: the r-invariant slice
inline Subspace invariant_subspace(const MixedSlice& slice, const QuadraticPair& pair) {
    std::vector<SparseVec> rows;
    for (const auto& x : pair.r_basis()) {
        SparseMatrix m =
            operator_matrix([&](const MixedElement& e) { return mixed_lie(x, e); }, slice,
                            slice);
        for (int r = 0; r < m.rows(); ++r)
            if (!m.row(r).empty()) rows.push_back(m.row(r));
    }
    SparseMatrix stacked(static_cast<int>(rows.size()), slice.dim());
    for (size_t r = 0; r < rows.size(); ++r) stacked.row_mut(static_cast<int>(r)) = rows[r];
    return kernel(stacked);
}

// horizontal-and-invariant elements: kernel of the stacked {i_x, L_x}
inline Subspace basic_subspace(const MixedSlice& slice, const QuadraticPair& pair) {
    std::vector<SparseVec> rows;
    for (const auto& x : pair.r_basis()) {
        SparseMatrix mi = operator_matrix(
            [&](const MixedElement& e) { return mixed_contract(x, e); }, slice, slice);
        SparseMatrix ml = operator_matrix(
            [&](const MixedElement& e) { return mixed_lie(x, e); }, slice, slice);
        for (int r = 0; r < mi.rows(); ++r)
            if (!mi.row(r).empty()) rows.push_back(mi.row(r));
        for (int r = 0; r < ml.rows(); ++r)
            if (!ml.row(r).empty()) rows.push_back(ml.row(r));
    }
    SparseMatrix stacked(static_cast<int>(rows.size()), slice.dim());
    for (size_t r = 0; r < rows.size(); ++r) stacked.row_mut(static_cast<int>(r)) = rows[r];
    return kernel(stacked);
}

// the subalgebra structure of r as a standalone Lie algebra (letters follow
// the order of pair.r_indices())
inline LiePtr sub_algebra_r(const QuadraticPair& pair) {
    const auto& idx = pair.r_indices();
    std::map<int, int> pos;
    for (size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = static_cast<int>(a);
    std::map<std::pair<int, int>, SparseVec> br;
    std::vector<std::string> labels;
    for (int i : idx) labels.push_back(pair.g().labels()[i]);
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b) {
            SparseVec v;
            for (const auto& [k, c] : pair.g().bracket_basis(idx[a], idx[b]))
                v[pos.at(k)] = c;
            if (!v.empty()) br[{static_cast<int>(a), static_cast<int>(b)}] = std::move(v);
        }
    return std::make_shared<const LieAlgebra>(std::move(labels), std::move(br));
}

}  // namespace ncweil
