#pragma once
// The point-case induction algebra (U(g) (x) Cl(p))^r with differential
// ad D^p, the maps alpha and xi, the center-to-center homomorphism eta_R
// computed by the Duflo route, the homotopy solver, and the windowed
// kernel-decomposition verifier.

#include "gdatum.hpp"

namespace ncweil {

struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// working context for the Dirac algebra of a pair
struct DiracContext {
    PairPtr pair;
    SpacePtr p_slot;
    LiePtr r_lie;  // standalone subalgebra structure, letters in r-index order
    int cap;
    std::vector<ExteriorElement> alpha;  // per r-basis element

    MixedElement dirac() const { return dirac_element(p_slot, cap); }
};

// alpha(x) in Lambda^2(p), normalized with zero constant term, solving
// [alpha(x), c_y] = c_{[x,y]} in Cl(p) for every y in the p-basis
inline ExteriorElement alpha_map(const PairPtr& pair, const SpacePtr& p_slot,
                                 const SparseVec& x_g) {
    const int np = p_slot->dim();
    std::vector<std::pair<int, int>> duos;
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) duos.emplace_back(i, j);
    // rows indexed by (p-generator, result mask)
    std::map<std::pair<int, Mask>, SparseVec> rows;
    std::map<std::pair<int, Mask>, Scalar> rhs;
    for (int l = 0; l < np; ++l) {
        ExteriorElement cy = p_slot->generator(l);
        for (size_t di = 0; di < duos.size(); ++di) {
            ExteriorElement a(p_slot, {{(Mask(1) << duos[di].first) |
                                            (Mask(1) << duos[di].second),
                                        Scalar(1)}});
            ExteriorElement comm =
                clifford_product(a, cy) - clifford_product(cy, a);
            for (const auto& [m, c] : comm.coeff())
                rows[{l, m}][static_cast<int>(di)] = c;
        }
        SparseVec br = pair->g().bracket(x_g, p_slot->to_g(LieAlgebra::unit(l)));
        ExteriorElement target = vector_to_exterior(p_slot, p_slot->to_span(br));
        for (const auto& [m, c] : target.coeff()) rhs[{l, m}] = c;
    }
    std::vector<std::pair<int, Mask>> keys;
    for (const auto& [k, r] : rows) keys.push_back(k);
    for (const auto& [k, r] : rhs)
        if (!rows.count(k)) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    SparseMatrix sys(static_cast<int>(keys.size()), static_cast<int>(duos.size()));
    std::vector<Scalar> b(keys.size());
    for (size_t r = 0; r < keys.size(); ++r) {
        auto it = rows.find(keys[r]);
        if (it != rows.end()) sys.row_mut(static_cast<int>(r)) = it->second;
        auto ib = rhs.find(keys[r]);
        if (ib != rhs.end()) b[r] = ib->second;
    }
    auto sol = solve(sys, b);
    if (!sol) throw NoSolution("alpha defining system inconsistent (invalid pair?)");
    ExteriorElement out(p_slot);
    for (size_t di = 0; di < duos.size(); ++di)
        if (!(*sol)[di].is_zero())
            out.add_term((Mask(1) << duos[di].first) | (Mask(1) << duos[di].second),
                         (*sol)[di]);
    return out;
}

inline DiracContext make_dirac_context(const PairPtr& pair, int cap) {
    DiracContext ctx{pair, QuadraticSpace::p_slot(pair), sub_algebra_r(*pair), cap, {}};
    for (const auto& x : pair->r_basis())
        ctx.alpha.push_back(alpha_map(pair, ctx.p_slot, x));
    return ctx;
}

// xi(x) = x (x) 1 + 1 (x) alpha(x) on generators, extended multiplicatively
// along PBW order; input is a U(r) element over the subalgebra letters
inline MixedElement xi_map(const DiracContext& ctx, const PBWElement& u_r) {
    if (u_r.algebra() != ctx.r_lie) throw ambient_mismatch("xi expects a U(r) element");
    const auto& idx = ctx.pair->r_indices();
    MixedElement out(ctx.pair->g_ptr(), ctx.p_slot, ctx.cap);
    for (const auto& [w, c] : u_r.coeff()) {
        MixedElement acc = MixedElement::unit(ctx.pair->g_ptr(), ctx.p_slot, ctx.cap);
        for (int letter : w) {
            MixedElement gen(ctx.pair->g_ptr(), ctx.p_slot, ctx.cap);
            gen.add_term(MixedKey{Word{idx[letter]}, 0}, Scalar(1));
            for (const auto& [m, cc] : ctx.alpha[letter].coeff())
                gen.add_term(MixedKey{{}, m}, cc);
            acc = mixed_product(acc, gen);
        }
        out += c * acc;
    }
    return out;
}

// orthogonal restriction S(g) -> S(r): x_i -> sum_m <x_i, r_m> s_m, output
// over the subalgebra letters
inline SymElement beta_restriction(const DiracContext& ctx, const SymElement& s) {
    const auto& pair = *ctx.pair;
    const auto& idx = pair.r_indices();
    std::map<int, int> pos;
    for (size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = static_cast<int>(a);
    // r-dual vectors in r-letter coordinates
    std::vector<SparseVec> duals_r;
    for (const auto& d : pair.r_dual()) {
        SparseVec v;
        for (const auto& [i, c] : d) v[pos.at(i)] = c;
        duals_r.push_back(std::move(v));
    }
    SymElement out(ctx.r_lie);
    for (const auto& [w, c] : s.coeff()) {
        std::map<Word, Scalar> acc{{Word{}, c}};
        for (int letter : w) {
            std::map<Word, Scalar> nxt;
            for (size_t m = 0; m < duals_r.size(); ++m) {
                Scalar coef = pair.B().pair(LieAlgebra::unit(letter), pair.r_basis()[m]);
                if (coef.is_zero()) continue;
                for (const auto& [j, dj] : duals_r[m])
                    for (const auto& [ww, cc] : acc) {
                        Word nw = ww;
                        nw.push_back(j);
                        std::sort(nw.begin(), nw.end());
                        auto [it, fresh] = nxt.try_emplace(std::move(nw), cc * coef * dj);
                        if (!fresh) it->second += cc * coef * dj;
                    }
            }
            std::erase_if(nxt, [](const auto& kv) { return kv.second.is_zero(); });
            acc = std::move(nxt);
        }
        for (const auto& [ww, cc] : acc) out.add_term(ww, cc);
    }
    return out;
}

// solve duflo(s) = z exactly on the degree <= N slice
inline SymElement duflo_inverse(LiePtr g, int N, int cap, const PBWElement& z) {
    auto words = monomials_upto(g->dim(), N);
    std::map<Word, int> widx;
    for (size_t i = 0; i < words.size(); ++i) widx[words[i]] = static_cast<int>(i);
    std::map<Word, SparseVec> cols;
    for (size_t ci = 0; ci < words.size(); ++ci) {
        PBWElement img = duflo(SymElement(g, {{words[ci], Scalar(1)}}), cap);
        for (const auto& [w, v] : img.coeff()) cols[w][static_cast<int>(ci)] = v;
    }
    for (const auto& [w, v] : z.coeff())
        if (!cols.count(w)) cols[w] = {};
    std::vector<Word> rws;
    for (const auto& [w, r] : cols) rws.push_back(w);
    SparseMatrix sys(static_cast<int>(rws.size()), static_cast<int>(words.size()));
    std::vector<Scalar> rhs(rws.size());
    for (size_t r = 0; r < rws.size(); ++r) {
        sys.row_mut(static_cast<int>(r)) = cols.at(rws[r]);
        auto it = z.coeff().find(rws[r]);
        if (it != z.coeff().end()) rhs[r] = it->second;
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw NoSolution("element not in the Duflo image of the slice");
    SymElement out(g);
    for (size_t ci = 0; ci < words.size(); ++ci)
        if (!(*sol)[ci].is_zero()) out.add_term(words[ci], (*sol)[ci]);
    return out;
}

// eta_R(z) = D_r ( beta_R ( D_g^{-1} (z) ) ), supported through the Duflo
// window (degree <= 3)
inline PBWElement eta_R(const DiracContext& ctx, const PBWElement& z) {
    const int deg = z.degree();
    if (deg > 3) throw UnsupportedDegree("eta_R window is degree <= 3");
    SymElement s = duflo_inverse(ctx.pair->g_ptr(), deg, ctx.cap, z);
    SymElement sr = beta_restriction(ctx, s);
    return duflo(sr, ctx.cap);
}

// basis of the r-invariant odd slice of U-degree <= M, as mixed elements
inline std::vector<MixedElement> odd_invariant_basis(const DiracContext& ctx, int M) {
    MixedSlice slice(ctx.pair->g_ptr(), ctx.p_slot, M, ctx.cap);
    Subspace inv = invariant_subspace(slice, *ctx.pair);
    std::vector<MixedElement> out;
    for (const auto& v : inv.basis()) {
        MixedElement e = slice.element(v);
        // split by parity (L preserves it, so components stay invariant)
        MixedElement odd(ctx.pair->g_ptr(), ctx.p_slot, ctx.cap);
        for (const auto& [k, c] : e.coeff())
            if (mask_degree(k.m) & 1) odd.add_term(k, c);
        if (!odd.is_zero()) out.push_back(std::move(odd));
    }
    return out;
}

// find a_z odd r-invariant of U-degree <= M with D a_z + a_z D = z(x)1 - xi(eta)
inline std::optional<MixedElement> solve_homotopy(const DiracContext& ctx,
                                                  const PBWElement& z,
                                                  const PBWElement& eta, int M) {
    MixedElement D = ctx.dirac();
    MixedElement rhs = MixedElement::from_pbw(z, ctx.p_slot) - xi_map(ctx, eta);
    auto odd = odd_invariant_basis(ctx, M);
    MixedSlice amb(ctx.pair->g_ptr(), ctx.p_slot, M + 1, ctx.cap);
    SparseMatrix sys(amb.dim(), static_cast<int>(odd.size()));
    for (size_t bi = 0; bi < odd.size(); ++bi) {
        MixedElement img = mixed_product(D, odd[bi]) + mixed_product(odd[bi], D);
        for (const auto& [k, c] : img.coeff())
            sys.set(amb.index.at(k), static_cast<int>(bi), c);
    }
    std::vector<Scalar> b(amb.dim());
    for (const auto& [k, c] : rhs.coeff()) b[amb.index.at(k)] = c;
    auto sol = solve(sys, b);
    if (!sol) return std::nullopt;
    MixedElement a(ctx.pair->g_ptr(), ctx.p_slot, ctx.cap);
    for (size_t bi = 0; bi < odd.size(); ++bi)
        if (!(*sol)[bi].is_zero()) a += (*sol)[bi] * odd[bi];
    return a;
}

// joint solve: the center element eta' in Z(r) forced by requiring
// z (x) 1 - xi(eta') to be a coboundary; unique by the decomposition theorem
inline std::optional<std::pair<PBWElement, MixedElement>> solve_homotopy_joint(
    const DiracContext& ctx, const PBWElement& z, int M) {
    MixedElement D = ctx.dirac();
    auto odd = odd_invariant_basis(ctx, M);
    std::vector<SparseVec> r_units;
    for (size_t a = 0; a < ctx.pair->r_indices().size(); ++a)
        r_units.push_back(LieAlgebra::unit(static_cast<int>(a)));
    auto zr = invariants_basis(ctx.r_lie, z.degree(), ctx.cap, r_units);
    MixedSlice amb(ctx.pair->g_ptr(), ctx.p_slot, M + 1, ctx.cap);
    const int nu = static_cast<int>(odd.size());
    SparseMatrix sys(amb.dim(), nu + static_cast<int>(zr.size()));
    for (int bi = 0; bi < nu; ++bi) {
        MixedElement img = mixed_product(D, odd[bi]) + mixed_product(odd[bi], D);
        for (const auto& [k, c] : img.coeff()) sys.set(amb.index.at(k), bi, c);
    }
    for (size_t zi = 0; zi < zr.size(); ++zi) {
        MixedElement img = xi_map(ctx, zr[zi]);
        for (const auto& [k, c] : img.coeff())
            sys.set(amb.index.at(k), nu + static_cast<int>(zi), c);
    }
    std::vector<Scalar> b(amb.dim());
    MixedElement zmx = MixedElement::from_pbw(z, ctx.p_slot);
    for (const auto& [k, c] : zmx.coeff()) b[amb.index.at(k)] = c;
    auto sol = solve(sys, b);
    if (!sol) return std::nullopt;
    PBWElement eta(ctx.r_lie, ctx.cap);
    for (size_t zi = 0; zi < zr.size(); ++zi) eta += (*sol)[nu + zi] * zr[zi];
    MixedElement a(ctx.pair->g_ptr(), ctx.p_slot, ctx.cap);
    for (int bi = 0; bi < nu; ++bi)
        if (!(*sol)[bi].is_zero()) a += (*sol)[bi] * odd[bi];
    return std::make_pair(std::move(eta), std::move(a));
}

// ------------------------------------------------- kernel decomposition
struct DecompositionReport {
    int dim_kernel = 0;        // Ker d on the invariant <= N slice
    int dim_image = 0;         // d(invariant <= N+1) cap (<= N slice)
    int dim_xi = 0;            // xi(Z(r) <= N)
    int dim_kernel_window = 0; // Ker d cap (filtration <= N-1)
    bool xi_in_kernel = false;
    bool xi_meets_image_trivially = false;
    bool window_spanned = false;
    bool ok() const { return xi_in_kernel && xi_meets_image_trivially && window_spanned; }
};

// Windowed verification of Ker d = xi(Z(R)) (+) Im d on the filtration <= N
// slice, with one degree of headroom; the spanning inclusion is checked on
// the <= N-1 window, the honest finite projection of the statement.
inline DecompositionReport verify_kernel_decomposition(const PairPtr& pair, int N,
                                                       int cap) {
    DiracContext ctx = make_dirac_context(pair, cap);
    MixedElement D = ctx.dirac();
    auto d = [&](const MixedElement& x) { return ad_dirac(D, x); };
    MixedSlice amb(pair->g_ptr(), ctx.p_slot, N + 2, cap);

    MixedSlice sliceN(pair->g_ptr(), ctx.p_slot, N, cap);
    MixedSlice sliceN1(pair->g_ptr(), ctx.p_slot, N + 1, cap);
    Subspace invN = invariant_subspace(sliceN, *pair);
    Subspace invN1 = invariant_subspace(sliceN1, *pair);

    // K = Ker(d restricted to the invariant <= N slice), in ambient coords
    SparseMatrix dmat(amb.dim(), invN.dim());
    for (int bi = 0; bi < invN.dim(); ++bi) {
        MixedElement img = d(sliceN.element(invN.basis()[bi]));
        for (const auto& [k, c] : img.coeff()) dmat.set(amb.index.at(k), bi, c);
    }
    Subspace kco = kernel(dmat);
    std::vector<SparseVec> kvecs;
    for (const auto& co : kco.basis()) {
        MixedElement x(pair->g_ptr(), ctx.p_slot, cap);
        for (const auto& [bi, c] : co) x += c * sliceN.element(invN.basis()[bi]);
        kvecs.push_back(amb.coords(x));
    }
    Subspace K(amb.dim(), kvecs);

    // I = d(invariant <= N+1) cap (<= N slice)
    std::vector<SparseVec> ivecs;
    for (const auto& v : invN1.basis()) {
        MixedElement img = d(sliceN1.element(v));
        if (!img.is_zero()) ivecs.push_back(amb.coords(img));
    }
    Subspace image(amb.dim(), ivecs);
    std::vector<SparseVec> slice_coordsN;
    for (const auto& k : sliceN.keys)
        slice_coordsN.push_back(SparseVec{{amb.index.at(k), Scalar(1)}});
    Subspace fullN(amb.dim(), slice_coordsN);
    Subspace I = subspace_intersect(image, fullN);

    // X = xi(Z(r) <= N)
    std::vector<SparseVec> r_units;
    for (size_t a = 0; a < pair->r_indices().size(); ++a)
        r_units.push_back(LieAlgebra::unit(static_cast<int>(a)));
    auto zr = invariants_basis(ctx.r_lie, N, cap, r_units);
    std::vector<SparseVec> xvecs;
    for (const auto& u : zr) {
        MixedElement img = xi_map(ctx, u);
        if (!img.is_zero()) xvecs.push_back(amb.coords(img));
    }
    Subspace X(amb.dim(), xvecs);

    // window: Ker d cap (filtration <= N-1)
    std::vector<SparseVec> slice_coordsW;
    MixedSlice sliceW(pair->g_ptr(), ctx.p_slot, N - 1, cap);
    for (const auto& k : sliceW.keys)
        slice_coordsW.push_back(SparseVec{{amb.index.at(k), Scalar(1)}});
    Subspace fullW(amb.dim(), slice_coordsW);
    Subspace KW = subspace_intersect(K, fullW);

    DecompositionReport rep;
    rep.dim_kernel = K.dim();
    rep.dim_image = I.dim();
    rep.dim_xi = X.dim();
    rep.dim_kernel_window = KW.dim();
    rep.xi_in_kernel = K.contains(X);
    rep.xi_meets_image_trivially = subspace_intersect(X, I).dim() == 0;
    rep.window_spanned = subspace_sum(X, I).contains(KW);
    return rep;
}

// ------------------------------------------------- the map F on W-nc
// F(u_x (x) 1) = u_x (x) 1 + 1 (x) alpha(x) and F(1 (x) c_x) = 1 (x) c_x for
// x in r, extended multiplicatively; input over (U(r), Cl(r)), output in W(g)nc
inline MixedElement nc_restriction_map(const DiracContext& ctx, const SpacePtr& g_slot,
                                       const SpacePtr& r_slot, const MixedElement& x_r) {
    LiePtr g = ctx.pair->g_ptr();
    const auto& idx = ctx.pair->r_indices();
    MixedElement out(g, g_slot, ctx.cap);
    std::map<Mask, CliffordExpansion> memo;
    for (const auto& [key, c] : x_r.coeff()) {
        MixedElement uacc = MixedElement::unit(g, g_slot, ctx.cap);
        for (int letter : key.u) {
            MixedElement gen(g, g_slot, ctx.cap);
            gen.add_term(MixedKey{Word{idx[letter]}, 0}, Scalar(1));
            ExteriorElement al = embed_exterior(ctx.alpha[letter], g_slot);
            for (const auto& [m, cc] : al.coeff()) gen.add_term(MixedKey{{}, m}, cc);
            uacc = mixed_product(uacc, gen);
        }
        for (const auto& [w, cw] : clifford_word_expansion(r_slot, key.m, memo)) {
            MixedElement term = cw * uacc;
            for (int j : w) {
                MixedElement gen(g, g_slot, ctx.cap);
                ExteriorElement cg =
                    vector_to_exterior(g_slot, g_slot->to_span(r_slot->basis_vector_g(j)));
                for (const auto& [m, cc] : cg.coeff()) gen.add_term(MixedKey{{}, m}, cc);
                term = mixed_product(term, gen);
            }
            out += c * term;
        }
    }
    return out;
}

}  // namespace ncweil
