#pragma once
// Filtration-truncated enveloping algebra U(g): PBW normal form and product,
// adjoint action, symmetrization, the low-degree Duflo map, Casimir elements
// and exact invariant-subspace slices.

#include <numeric>

#include "liealg.hpp"

namespace ncweil {

struct FiltrationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedDegree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a PBW monomial: basis indices in nondecreasing order
using Word = std::vector<int>;

using LiePtr = std::shared_ptr<const LieAlgebra>;

namespace detail {

// rewrite a (possibly unordered) word into PBW normal order, accumulating
// coefficients; commutator terms strictly drop word length, so this halts
inline void normal_order_into(const LieAlgebra& L, Word w, Scalar c,
                              std::map<Word, Scalar>& out) {
    std::vector<std::pair<Word, Scalar>> stack;
    stack.emplace_back(std::move(w), std::move(c));
    while (!stack.empty()) {
        auto [word, coef] = std::move(stack.back());
        stack.pop_back();
        int pos = -1;
        for (size_t t = 0; t + 1 < word.size(); ++t)
            if (word[t] > word[t + 1]) {
                pos = static_cast<int>(t);
                break;
            }
        if (pos < 0) {
            auto [it, fresh] = out.try_emplace(word, coef);
            if (!fresh) {
                it->second += coef;
                if (it->second.is_zero()) out.erase(it);
            }
            continue;
        }
        const auto& br = L.bracket_basis(word[pos], word[pos + 1]);
        for (const auto& [k, v] : br) {
            Word shorter;
            shorter.reserve(word.size() - 1);
            shorter.insert(shorter.end(), word.begin(), word.begin() + pos);
            shorter.push_back(k);
            shorter.insert(shorter.end(), word.begin() + pos + 2, word.end());
            stack.emplace_back(std::move(shorter), coef * v);
        }
        std::swap(word[pos], word[pos + 1]);
        stack.emplace_back(std::move(word), std::move(coef));
    }
}

}  // namespace detail

class PBWElement {
  public:
    PBWElement(LiePtr g, int cap) : g_(std::move(g)), cap_(cap) {}
    PBWElement(LiePtr g, int cap, std::map<Word, Scalar> coeff)
        : g_(std::move(g)), cap_(cap), c_(std::move(coeff)) {
        std::erase_if(c_, [](const auto& kv) { return kv.second.is_zero(); });
        for (const auto& [w, v] : c_)
            if (static_cast<int>(w.size()) > cap_)
                throw FiltrationOverflow("monomial exceeds filtration cap");
    }

    static PBWElement unit(LiePtr g, int cap) {
        return PBWElement(std::move(g), cap, {{Word{}, Scalar(1)}});
    }
    static PBWElement generator(LiePtr g, int cap, int i) {
        return PBWElement(std::move(g), cap, {{Word{i}, Scalar(1)}});
    }
    static PBWElement from_vector(LiePtr g, int cap, const SparseVec& x) {
        std::map<Word, Scalar> c;
        for (const auto& [i, v] : x) c[Word{i}] = v;
        return PBWElement(std::move(g), cap, std::move(c));
    }

    const LiePtr& algebra() const { return g_; }
    int cap() const { return cap_; }
    const std::map<Word, Scalar>& coeff() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [w, v] : c_) d = std::max<int>(d, static_cast<int>(w.size()));
        return d;
    }

    void add_term(Word w, const Scalar& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = c_.try_emplace(std::move(w), v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    PBWElement operator-() const {
        PBWElement out(g_, cap_);
        for (const auto& [w, v] : c_) out.c_.emplace(w, -v);
        return out;
    }
    PBWElement& operator+=(const PBWElement& o) {
        require_same(o);
        for (const auto& [w, v] : o.c_) add_term(w, v);
        return *this;
    }
    PBWElement& operator-=(const PBWElement& o) {
        require_same(o);
        for (const auto& [w, v] : o.c_) add_term(w, -v);
        return *this;
    }
    friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
    friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
    friend PBWElement operator*(const Scalar& c, const PBWElement& a) {
        PBWElement out(a.g_, a.cap_);
        if (c.is_zero()) return out;
        for (const auto& [w, v] : a.c_) out.c_.emplace(w, c * v);
        return out;
    }
    friend bool operator==(const PBWElement& a, const PBWElement& b) {
        return a.g_ == b.g_ && a.c_ == b.c_;
    }

    void require_same(const PBWElement& o) const {
        if (g_ != o.g_) throw ambient_mismatch("enveloping-algebra ambient mismatch");
        if (cap_ != o.cap_) throw FiltrationOverflow("mixed filtration caps");
    }

  private:
    LiePtr g_;
    int cap_;
    std::map<Word, Scalar> c_;
};

inline PBWElement pbw_product(const PBWElement& a, const PBWElement& b) {
    a.require_same(b);
    if (a.degree() + b.degree() > a.cap())
        throw FiltrationOverflow("product degree " + std::to_string(a.degree() + b.degree()) +
                                 " exceeds cap " + std::to_string(a.cap()));
    PBWElement out(a.algebra(), a.cap());
    std::map<Word, Scalar> acc;
    for (const auto& [w1, c1] : a.coeff())
        for (const auto& [w2, c2] : b.coeff()) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            detail::normal_order_into(*a.algebra(), std::move(w), c1 * c2, acc);
        }
    for (auto& [w, v] : acc) out.add_term(w, v);
    return out;
}

// derivation extension of ad a; preserves the filtration degree
inline PBWElement adjoint_action(const SparseVec& a_g, const PBWElement& u) {
    PBWElement out(u.algebra(), u.cap());
    std::map<Word, Scalar> acc;
    const auto& L = *u.algebra();
    for (const auto& [w, c] : u.coeff())
        for (size_t t = 0; t < w.size(); ++t) {
            SparseVec br = L.bracket(a_g, LieAlgebra::unit(w[t]));
            for (const auto& [k, v] : br) {
                Word nw = w;
                nw[t] = k;
                detail::normal_order_into(L, std::move(nw), c * v, acc);
            }
        }
    for (auto& [w, v] : acc) out.add_term(w, v);
    return out;
}

// S(g) in commuting basis symbols; words are sorted multisets
class SymElement {
  public:
    explicit SymElement(LiePtr g) : g_(std::move(g)) {}
    SymElement(LiePtr g, std::map<Word, Scalar> coeff)
        : g_(std::move(g)), c_(std::move(coeff)) {
        std::erase_if(c_, [](const auto& kv) { return kv.second.is_zero(); });
        for (const auto& [w, v] : c_)
            if (!std::is_sorted(w.begin(), w.end()))
                throw std::invalid_argument("symmetric monomial not sorted");
    }

    const LiePtr& algebra() const { return g_; }
    const std::map<Word, Scalar>& coeff() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const {
        int d = 0;
        for (const auto& [w, v] : c_) d = std::max<int>(d, static_cast<int>(w.size()));
        return d;
    }

    void add_term(Word w, const Scalar& v) {
        if (v.is_zero()) return;
        std::sort(w.begin(), w.end());
        auto [it, fresh] = c_.try_emplace(std::move(w), v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    friend SymElement operator*(const Scalar& c, const SymElement& a) {
        SymElement out(a.g_);
        if (c.is_zero()) return out;
        for (const auto& [w, v] : a.c_) out.c_.emplace(w, c * v);
        return out;
    }
    SymElement& operator+=(const SymElement& o) {
        if (g_ != o.g_) throw ambient_mismatch("symmetric-algebra ambient mismatch");
        for (const auto& [w, v] : o.c_) add_term(w, v);
        return *this;
    }
    friend SymElement operator+(SymElement a, const SymElement& b) { return a += b; }
    friend bool operator==(const SymElement& a, const SymElement& b) {
        return a.g_ == b.g_ && a.c_ == b.c_;
    }

  private:
    LiePtr g_;
    std::map<Word, Scalar> c_;
};

inline SymElement sym_product(const SymElement& a, const SymElement& b) {
    if (a.algebra() != b.algebra()) throw ambient_mismatch("symmetric ambient mismatch");
    SymElement out(a.algebra());
    for (const auto& [w1, c1] : a.coeff())
        for (const auto& [w2, c2] : b.coeff()) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            out.add_term(std::move(w), c1 * c2);
        }
    return out;
}

// adjoint derivation on S(g)
inline SymElement sym_adjoint(const SparseVec& a_g, const SymElement& s) {
    SymElement out(s.algebra());
    const auto& L = *s.algebra();
    for (const auto& [w, c] : s.coeff())
        for (size_t t = 0; t < w.size(); ++t) {
            SparseVec br = L.bracket(a_g, LieAlgebra::unit(w[t]));
            for (const auto& [k, v] : br) {
                Word nw = w;
                nw[t] = k;
                out.add_term(std::move(nw), c * v);
            }
        }
    return out;
}

// monomial a_1...a_p -> (1/p!) sum over permutations of the U(g) product
inline PBWElement symmetrize(const SymElement& s, int cap) {
    if (s.degree() > cap) throw FiltrationOverflow("symmetrize exceeds cap");
    PBWElement out(s.algebra(), cap);
    std::map<Word, Scalar> acc;
    const auto& L = *s.algebra();
    for (const auto& [w, c] : s.coeff()) {
        Word perm = w;
        long count = 0;
        std::map<Word, Scalar> local;
        do {
            detail::normal_order_into(L, perm, Scalar(1), local);
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        Scalar norm = c / Scalar(count);
        for (auto& [ww, v] : local) {
            auto [it, fresh] = acc.try_emplace(ww, norm * v);
            if (!fresh) it->second += norm * v;
        }
    }
    for (auto& [w, v] : acc) out.add_term(w, v);
    return out;
}

// Gram matrix of the quadratic form q(x) = tr((ad x)^2)
inline std::vector<std::vector<Scalar>> ad_trace_form(const LieAlgebra& L) {
    const int n = L.dim();
    std::vector<SparseMatrix> ads;
    ads.reserve(n);
    for (int i = 0; i < n; ++i) ads.push_back(L.adjoint_matrix(LieAlgebra::unit(i)));
    std::vector<std::vector<Scalar>> K(n, std::vector<Scalar>(n));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Scalar s;
            for (int i = 0; i < n; ++i)
                for (const auto& [j, v] : ads[a].row(i)) s += v * ads[b].at(j, i);
            K[a][b] = s;
            K[b][a] = K[a][b];
        }
    return K;
}

// Duflo map through filtration degree 3: the series factor 1 + q(x)/48 is the
// only part of j^{1/2} that can touch degree <= 3, where q(x) = tr((ad x)^2)
inline PBWElement duflo(const SymElement& s, int cap) {
    if (s.degree() > 3) throw UnsupportedDegree("Duflo window is degree <= 3");
    auto K = ad_trace_form(*s.algebra());
    SymElement corr(s.algebra());
    for (const auto& [w, c] : s.coeff()) {
        if (w.size() < 2) continue;
        const int n = s.algebra()->dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (K[a][b].is_zero()) continue;
                // d_a d_b applied to the monomial
                Word wb = w;
                auto itb = std::find(wb.begin(), wb.end(), b);
                if (itb == wb.end()) continue;
                long mult_b = std::count(wb.begin(), wb.end(), b);
                wb.erase(itb);
                auto ita = std::find(wb.begin(), wb.end(), a);
                if (ita == wb.end()) continue;
                long mult_a = std::count(wb.begin(), wb.end(), a);
                Word wa = wb;
                wa.erase(std::find(wa.begin(), wa.end(), a));
                corr.add_term(std::move(wa), c * K[a][b] * Scalar(mult_b * mult_a));
            }
    }
    return symmetrize(s, cap) + Scalar(1, 48) * symmetrize(corr, cap);
}

inline SymElement casimir_symbol(const QuadraticPair& pair) {
    SymElement s(pair.g_ptr());
    const int n = pair.g().dim();
    for (int k = 0; k < n; ++k)
        for (const auto& [i, c] : pair.g_dual()[k]) s.add_term(Word{k, i}, c);
    return s;
}

// Casimir Omega = sum_k u_{a_k} u_{b_k} of the pair's form, as a PBW element
inline PBWElement casimir(const QuadraticPair& pair, int cap) {
    return symmetrize(casimir_symbol(pair), cap);
}

// all PBW/symmetric monomials of degree <= N over n letters, in a fixed order
inline std::vector<Word> monomials_upto(int n, int N) {
    std::vector<Word> out{Word{}};
    std::vector<Word> prev{Word{}};
    for (int l = 1; l <= N; ++l) {
        std::vector<Word> next;
        for (const auto& w : prev)
            for (int i = w.empty() ? 0 : w.back(); i < n; ++i) {
                Word nw = w;
                nw.push_back(i);
                next.push_back(std::move(nw));
            }
        out.insert(out.end(), next.begin(), next.end());
        prev = std::move(next);
    }
    return out;
}

enum class InvariantSpace { UofG, SofG };

// exact basis of the degree <= N invariants under the given acting vectors
// (connected semantics: kernel of the stacked adjoint actions)
inline std::vector<PBWElement> invariants_basis(LiePtr g, int N, int cap,
                                                const std::vector<SparseVec>& acting) {
    auto words = monomials_upto(g->dim(), N);
    std::map<Word, int> widx;
    for (size_t i = 0; i < words.size(); ++i) widx[words[i]] = static_cast<int>(i);
    std::vector<SparseVec> rows;
    for (const auto& x : acting) {
        std::map<int, SparseVec> cols;  // target word -> row
        for (size_t ci = 0; ci < words.size(); ++ci) {
            PBWElement img = adjoint_action(
                x, PBWElement(g, cap, {{words[ci], Scalar(1)}}));
            for (const auto& [w, v] : img.coeff()) cols[widx.at(w)][static_cast<int>(ci)] = v;
        }
        for (auto& [ri, r] : cols) rows.push_back(std::move(r));
    }
    SparseMatrix m(static_cast<int>(rows.size()), static_cast<int>(words.size()));
    for (size_t r = 0; r < rows.size(); ++r) m.row_mut(static_cast<int>(r)) = rows[r];
    std::vector<PBWElement> out;
    Subspace ker = kernel(m);
    for (const auto& k : ker.basis()) {
        PBWElement e(g, cap);
        for (const auto& [ci, v] : k) e.add_term(words[ci], v);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<SymElement> sym_invariants_basis(LiePtr g, int N,
                                                    const std::vector<SparseVec>& acting) {
    auto words = monomials_upto(g->dim(), N);
    std::map<Word, int> widx;
    for (size_t i = 0; i < words.size(); ++i) widx[words[i]] = static_cast<int>(i);
    std::vector<SparseVec> rows;
    for (const auto& x : acting) {
        std::map<int, SparseVec> cols;
        for (size_t ci = 0; ci < words.size(); ++ci) {
            SymElement img = sym_adjoint(x, SymElement(g, {{words[ci], Scalar(1)}}));
            for (const auto& [w, v] : img.coeff()) cols[widx.at(w)][static_cast<int>(ci)] = v;
        }
        for (auto& [ri, r] : cols) rows.push_back(std::move(r));
    }
    SparseMatrix m(static_cast<int>(rows.size()), static_cast<int>(words.size()));
    for (size_t r = 0; r < rows.size(); ++r) m.row_mut(static_cast<int>(r)) = rows[r];
    std::vector<SymElement> out;
    Subspace ker = kernel(m);
    for (const auto& k : ker.basis()) {
        SymElement e(g);
        for (const auto& [ci, v] : k) e.add_term(words[ci], v);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace ncweil
