#pragma once
// Code-built pairs shared across the unit tests.

#include "ncweil/liealg.hpp"

namespace testpairs {

using namespace ncweil;

inline std::shared_ptr<const LieAlgebra> sl2_algebra() {
    return std::make_shared<const LieAlgebra>(
        std::vector<std::string>{"h", "e", "f"},
        std::map<std::pair<int, int>, SparseVec>{{{0, 1}, {{1, Scalar(2)}}},
                                                 {{0, 2}, {{2, Scalar(-2)}}},
                                                 {{1, 2}, {{0, Scalar(1)}}}});
}

inline std::vector<std::vector<Scalar>> sl2_trace_form() {
    return {{Scalar(2), Scalar(0), Scalar(0)},
            {Scalar(0), Scalar(0), Scalar(1)},
            {Scalar(0), Scalar(1), Scalar(0)}};
}

// sl2 with the trace form and r the Cartan line
inline PairPtr sl2_pair() {
    auto g = sl2_algebra();
    return validate_pair(g, InvariantForm(*g, sl2_trace_form()), {0});
}

// sl2 with r = g (so p = 0)
inline PairPtr sl2_full_pair() {
    auto g = sl2_algebra();
    return validate_pair(g, InvariantForm(*g, sl2_trace_form()), {0, 1, 2});
}

// gl2 with the trace form, r the center line; p = sl2 carries gamma_p != 0
inline PairPtr gl2_pair() {
    auto g = std::make_shared<const LieAlgebra>(
        std::vector<std::string>{"z", "h", "e", "f"},
        std::map<std::pair<int, int>, SparseVec>{{{1, 2}, {{2, Scalar(2)}}},
                                                 {{1, 3}, {{3, Scalar(-2)}}},
                                                 {{2, 3}, {{1, Scalar(1)}}}});
    std::vector<std::vector<Scalar>> B(4, std::vector<Scalar>(4));
    B[0][0] = Scalar(2);
    B[1][1] = Scalar(2);
    B[2][3] = B[3][2] = Scalar(1);
    return validate_pair(g, InvariantForm(*g, B), {0});
}

// sl2 x sl2 in the adapted diagonal basis  d_x = (x,x), m_x = (-w x, x) with
// B = tr (+) w tr; weight w = 1/3 keeps the pair non-symmetric while the
// spinor normalization stays rational
inline PairPtr diag_pair(Scalar w = Scalar(1, 3)) {
    const char* names[3] = {"h", "e", "f"};
    auto base = [&](int a, int b) -> SparseVec {
        static const std::map<std::pair<int, int>, SparseVec> t{
            {{0, 1}, {{1, Scalar(2)}}},
            {{0, 2}, {{2, Scalar(-2)}}},
            {{1, 2}, {{0, Scalar(1)}}}};
        auto it = t.find({a, b});
        if (it != t.end()) return it->second;
        it = t.find({b, a});
        if (it == t.end()) return {};
        SparseVec neg;
        for (const auto& [k, v] : it->second) neg[k] = -v;
        return neg;
    };
    std::map<std::pair<int, int>, SparseVec> br;
    auto add = [&](int i, int j, int k, const Scalar& v) {
        if (v.is_zero()) return;
        if (i < j)
            br[{i, j}][k] += v;
        else
            br[{j, i}][k] += -v;
    };
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            for (const auto& [k, v] : base(a, b)) {
                if (a < b) {
                    add(a, b, k, v);                              // [d,d] = d
                    add(3 + a, 3 + b, k, w * v);                  // [m,m] = w d + (1-w) m
                    add(3 + a, 3 + b, 3 + k, (Scalar(1) - w) * v);
                }
                add(a, 3 + b, 3 + k, v);                          // [d,m] = m
            }
        }
    for (auto& [ij, d] : br)
        std::erase_if(d, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(br, [](const auto& kv) { return kv.second.empty(); });
    std::vector<std::string> lbl{"dh", "de", "df", "mh", "me", "mf"};
    auto g = std::make_shared<const LieAlgebra>(lbl, std::move(br));
    Scalar tr[3][3] = {};
    tr[0][0] = Scalar(2);
    tr[1][2] = tr[2][1] = Scalar(1);
    std::vector<std::vector<Scalar>> B(6, std::vector<Scalar>(6));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            B[a][b] = (Scalar(1) + w) * tr[a][b];
            B[3 + a][3 + b] = w * (Scalar(1) + w) * tr[a][b];
        }
    return validate_pair(g, InvariantForm(*g, B), {0, 1, 2});
}

// abelian algebra with a supplied Gram matrix and empty r
inline PairPtr abelian_pair(std::vector<std::vector<Scalar>> gram) {
    const int n = static_cast<int>(gram.size());
    std::vector<std::string> lbl;
    for (int i = 0; i < n; ++i) lbl.push_back("x" + std::to_string(i));
    auto g = std::make_shared<const LieAlgebra>(lbl,
                                                std::map<std::pair<int, int>, SparseVec>{});
    return validate_pair(g, InvariantForm(*g, std::move(gram)), {});
}

// the standard irreducible sl2 module of highest weight n, exact matrices
inline std::vector<std::vector<std::vector<Scalar>>> sl2_module_raw(int n) {
    const int d = n + 1;
    std::vector<std::vector<std::vector<Scalar>>> out(
        3, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d)));
    for (int k = 0; k < d; ++k) {
        out[0][k][k] = Scalar(n - 2 * k);
        if (k + 1 < d) out[2][k + 1][k] = Scalar(1);
        if (k - 1 >= 0) out[1][k - 1][k] = Scalar(static_cast<long>(k) * (n - k + 1));
    }
    return out;
}

}  // namespace testpairs
