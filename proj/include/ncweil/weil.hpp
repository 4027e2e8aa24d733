#pragma once
// The classical Weil algebra W(g) = S(g*) (x) Lambda(g*), stored through the
// B-identification as symmetric words and exterior masks over the g-basis.
// Carries the full g-differential structure and the restriction map F from
// W(r). The S-slot is even, so products need no cross signs.

#include "exterior.hpp"
#include "pbw.hpp"

namespace ncweil {

struct WeilKey {
    Word s;  // sorted symmetric monomial
    Mask m = 0;
    friend auto operator<=>(const WeilKey&, const WeilKey&) = default;
};

class WeilElement {
  public:
    explicit WeilElement(SpacePtr g_slot) : W_(std::move(g_slot)) {}
    WeilElement(SpacePtr g_slot, std::map<WeilKey, Scalar> coeff)
        : W_(std::move(g_slot)), c_(std::move(coeff)) {
        std::erase_if(c_, [](const auto& kv) { return kv.second.is_zero(); });
    }

    static WeilElement unit(SpacePtr g_slot) {
        return WeilElement(std::move(g_slot), {{WeilKey{}, Scalar(1)}});
    }
    // the generator 1 (x) e_v for v the j-th basis vector (through B)
    static WeilElement e_gen(SpacePtr g_slot, int j) {
        return WeilElement(std::move(g_slot), {{WeilKey{{}, Mask(1) << j}, Scalar(1)}});
    }
    // the generator s_v (x) 1
    static WeilElement s_gen(SpacePtr g_slot, int j) {
        return WeilElement(std::move(g_slot), {{WeilKey{Word{j}, 0}, Scalar(1)}});
    }

    const SpacePtr& slot() const { return W_; }
    const std::map<WeilKey, Scalar>& coeff() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void add_term(WeilKey k, const Scalar& v) {
        if (v.is_zero()) return;
        std::sort(k.s.begin(), k.s.end());
        auto [it, fresh] = c_.try_emplace(std::move(k), v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    WeilElement operator-() const {
        WeilElement out(W_);
        for (const auto& [k, v] : c_) out.c_.emplace(k, -v);
        return out;
    }
    WeilElement& operator+=(const WeilElement& o) {
        require_same(o);
        for (const auto& [k, v] : o.c_) add_term(k, v);
        return *this;
    }
    WeilElement& operator-=(const WeilElement& o) {
        require_same(o);
        for (const auto& [k, v] : o.c_) add_term(k, -v);
        return *this;
    }
    friend WeilElement operator+(WeilElement a, const WeilElement& b) { return a += b; }
    friend WeilElement operator-(WeilElement a, const WeilElement& b) { return a -= b; }
    friend WeilElement operator*(const Scalar& c, const WeilElement& a) {
        WeilElement out(a.W_);
        if (c.is_zero()) return out;
        for (const auto& [k, v] : a.c_) out.c_.emplace(k, c * v);
        return out;
    }
    friend bool operator==(const WeilElement& a, const WeilElement& b) {
        return same_space(a.W_, b.W_) && a.c_ == b.c_;
    }

    void require_same(const WeilElement& o) const {
        if (!same_space(W_, o.W_)) throw ambient_mismatch("Weil ambient mismatch");
    }

  private:
    SpacePtr W_;
    std::map<WeilKey, Scalar> c_;
};

inline WeilElement weil_product(const WeilElement& a, const WeilElement& b) {
    a.require_same(b);
    WeilElement out(a.slot());
    for (const auto& [k1, c1] : a.coeff())
        for (const auto& [k2, c2] : b.coeff()) {
            auto [m, sg] = wedge_masks(k1.m, k2.m);
            if (sg == 0) continue;
            Word s = k1.s;
            s.insert(s.end(), k2.s.begin(), k2.s.end());
            out.add_term(WeilKey{std::move(s), m}, Scalar(sg) * c1 * c2);
        }
    return out;
}

// d(1 (x) e_v) = 1 (x) d_Koszul v + s_v (x) 1
// d(s_v (x) 1) = sum_k s_{[a_k,v]} (x) e_{b_k}
// extended as an odd super-derivation; d^2 = 0 and [i_a, d] = L_a hold exactly
inline WeilElement weil_differential(const WeilElement& x) {
    const auto& sp = x.slot();
    const auto& L = sp->pair().g();
    const int n = sp->dim();
    WeilElement out(sp);
    for (const auto& [key, c] : x.coeff()) {
        // Lambda-slot factors
        int pos = 0;
        Mask t = key.m;
        while (t) {
            Mask bit = t & (~t + 1);
            int j = std::countr_zero(bit);
            Scalar sgn((pos & 1) ? -1 : 1);
            Mask rest = key.m ^ bit;
            ExteriorElement dk =
                koszul_differential(ExteriorElement(sp, {{bit, Scalar(1)}}));
            for (const auto& [dm, dc] : dk.coeff()) {
                auto [m2, s2] = wedge_masks(dm, rest);
                if (s2 != 0) out.add_term(WeilKey{key.s, m2}, Scalar(s2) * sgn * dc * c);
            }
            Word s = key.s;
            s.push_back(j);
            out.add_term(WeilKey{std::move(s), rest}, sgn * c);
            ++pos;
            t ^= bit;
        }
        // S-slot factors (even: no position signs)
        for (size_t ti = 0; ti < key.s.size(); ++ti) {
            Word rest_s = key.s;
            rest_s.erase(rest_s.begin() + ti);
            for (int k = 0; k < n; ++k) {
                SparseVec br =
                    L.bracket(LieAlgebra::unit(k), LieAlgebra::unit(key.s[ti]));
                if (br.empty()) continue;
                ExteriorElement bk = vector_to_exterior(sp, sp->dual_vector(k));
                for (const auto& [j, cb] : br)
                    for (const auto& [mb, cw] : bk.coeff()) {
                        auto [m2, s2] = wedge_masks(mb, key.m);
                        if (s2 == 0) continue;
                        Word s = rest_s;
                        s.push_back(j);
                        out.add_term(WeilKey{std::move(s), m2},
                                     Scalar(s2) * cb * cw * c);
                    }
            }
        }
    }
    return out;
}

// i_a = I_{S} (x) i'_a
inline WeilElement weil_contract(const SparseVec& a_g, const WeilElement& x) {
    auto p = x.slot()->pairings_g(a_g);
    WeilElement out(x.slot());
    for (const auto& [key, c] : x.coeff()) {
        ExteriorElement t(x.slot());
        detail::contract_mono(p, key.m, c, t);
        for (const auto& [mm, cc] : t.coeff()) out.add_term(WeilKey{key.s, mm}, cc);
    }
    return out;
}

// coadjoint action on both slots (adjoint through the B-identification)
inline WeilElement weil_lie(const SparseVec& a_g, const WeilElement& x) {
    const auto& sp = x.slot();
    const auto& L = sp->pair().g();
    WeilElement out(sp);
    for (const auto& [key, c] : x.coeff()) {
        for (size_t ti = 0; ti < key.s.size(); ++ti) {
            SparseVec br = L.bracket(a_g, LieAlgebra::unit(key.s[ti]));
            for (const auto& [k, v] : br) {
                Word nw = key.s;
                nw[ti] = k;
                out.add_term(WeilKey{std::move(nw), key.m}, c * v);
            }
        }
        ExteriorElement lm = lie_derivative(a_g, ExteriorElement(sp, {{key.m, Scalar(1)}}));
        for (const auto& [mm, cc] : lm.coeff()) out.add_term(WeilKey{key.s, mm}, c * cc);
    }
    return out;
}

// ------------------------------------------------------------ the map F
// F : W(r) -> W(g) on generators (lambda in r* identified with x in r):
//   F(s_x (x) 1) = s_x (x) 1 - 1 (x) delta_x,  F(1 (x) e_x) = 1 (x) e_x,
// where delta_x in Lambda^2(p) has <delta_x, y^z> = <x,[y,z]> for y,z in p
// and pairs to zero against r-directions. Extended multiplicatively.
inline ExteriorElement delta_two_form(const SpacePtr& g_slot, const SparseVec& x_g) {
    const auto& pair = g_slot->pair();
    const auto& B = pair.B();
    const int np = pair.dim_p();
    std::vector<std::pair<int, int>> duos;
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) duos.emplace_back(i, j);
    const int T = static_cast<int>(duos.size());
    if (T == 0) return ExteriorElement(g_slot);
    SparseMatrix sys(T, T);
    std::vector<Scalar> rhs(T);
    auto det2 = [&](std::pair<int, int> a, std::pair<int, int> b) {
        const auto& pb = pair.p_basis();
        Scalar g00 = B.pair(pb[a.first], pb[b.first]);
        Scalar g01 = B.pair(pb[a.first], pb[b.second]);
        Scalar g10 = B.pair(pb[a.second], pb[b.first]);
        Scalar g11 = B.pair(pb[a.second], pb[b.second]);
        return g00 * g11 - g01 * g10;
    };
    const auto& L = pair.g();
    for (int r = 0; r < T; ++r) {
        for (int c = 0; c < T; ++c) {
            Scalar v = det2(duos[c], duos[r]);
            if (!v.is_zero()) sys.set(r, c, v);
        }
        SparseVec br = L.bracket(pair.p_basis()[duos[r].first], pair.p_basis()[duos[r].second]);
        rhs[r] = B.pair(x_g, br);
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw std::logic_error("delta pairing system inconsistent");
    // assemble in Lambda^2(p) then embed into Lambda(g)
    ExteriorElement out(g_slot);
    for (int c = 0; c < T; ++c) {
        if ((*sol)[c].is_zero()) continue;
        auto [i, j] = duos[c];
        out += (*sol)[c] * wedge(vector_to_exterior(g_slot,
                                                    g_slot->to_span(pair.p_basis()[i])),
                                 vector_to_exterior(g_slot,
                                                    g_slot->to_span(pair.p_basis()[j])));
    }
    return out;
}

// x given over the r-slot habitat: a WeilElement of W(r) is encoded over the
// r-slot QuadraticSpace with symmetric letters indexing the r-basis
inline WeilElement weil_restriction_map(const WeilElement& x_r, const SpacePtr& g_slot) {
    const auto& pair = g_slot->pair();
    const auto& r_slot = x_r.slot();
    WeilElement out(g_slot);
    // generator images
    std::vector<WeilElement> s_img, e_img;
    for (int j = 0; j < r_slot->dim(); ++j) {
        SparseVec x_g = r_slot->basis_vector_g(j);
        WeilElement s(g_slot);
        for (const auto& [i, c] : g_slot->to_span(x_g)) s.add_term(WeilKey{Word{i}, 0}, c);
        ExteriorElement d = delta_two_form(g_slot, x_g);
        for (const auto& [m, c] : d.coeff()) s.add_term(WeilKey{{}, m}, -c);
        s_img.push_back(std::move(s));
        ExteriorElement e = vector_to_exterior(g_slot, g_slot->to_span(x_g));
        WeilElement ew(g_slot);
        for (const auto& [m, c] : e.coeff()) ew.add_term(WeilKey{{}, m}, c);
        e_img.push_back(std::move(ew));
    }
    for (const auto& [key, c] : x_r.coeff()) {
        WeilElement term = c * WeilElement::unit(g_slot);
        for (int j : key.s) term = weil_product(term, s_img[j]);
        Mask t = key.m;
        while (t) {
            Mask bit = t & (~t + 1);
            term = weil_product(term, e_img[std::countr_zero(bit)]);
            t ^= bit;
        }
        out += term;
    }
    return out;
}

// ------------------------------------------------------------ slices
struct WeilSlice {
    SpacePtr W;
    int N = 0;  // symmetric-degree cap
    std::vector<WeilKey> keys;
    std::map<WeilKey, int> index;

    WeilSlice(SpacePtr W_, int N_) : W(std::move(W_)), N(N_) {
        for (const auto& w : monomials_upto(W->dim(), N))
            for (Mask m = 0; m < (Mask(1) << W->dim()); ++m) keys.push_back({w, m});
        for (size_t i = 0; i < keys.size(); ++i) index[keys[i]] = static_cast<int>(i);
    }
    int dim() const { return static_cast<int>(keys.size()); }
    SparseVec coords(const WeilElement& x) const {
        SparseVec v;
        for (const auto& [k, c] : x.coeff()) v[index.at(k)] = c;
        return v;
    }
    WeilElement element(const SparseVec& v) const {
        WeilElement out(W);
        for (const auto& [i, c] : v) out.add_term(keys[i], c);
        return out;
    }
};

}  // namespace ncweil
