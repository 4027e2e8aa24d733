#pragma once
// Exact-expression formatters for CLI output. Every coefficient prints as an
// exact string; no floating point appears anywhere.

#include "mixed.hpp"
#include "pbw.hpp"

namespace ncweil {

inline std::string format_coeff(const Scalar& c, bool leading) {
    std::string s = c.str();
    bool negative = !s.empty() && s[0] == '-';
    std::string mag = negative ? s.substr(1) : s;
    std::string sign = negative ? (leading ? "-" : " - ") : (leading ? "" : " + ");
    if (mag == "1") return sign;
    return sign + mag + "*";
}

inline std::string format_mask(Mask m, const std::vector<std::string>& labels,
                               const std::string& prefix) {
    if (m == 0) return "1";
    std::string out;
    Mask t = m;
    while (t) {
        Mask bit = t & (~t + 1);
        if (!out.empty()) out += "^";
        out += prefix + labels[std::countr_zero(bit)];
        t ^= bit;
    }
    return out;
}

inline std::string format_word(const Word& w, const std::vector<std::string>& labels,
                               const std::string& prefix) {
    if (w.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += "*";
        out += prefix + labels[w[i]];
    }
    return out;
}

inline std::string format_exterior(const ExteriorElement& x,
                                   const std::vector<std::string>& labels) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : x.coeff()) {
        out += format_coeff(c, out.empty());
        out += format_mask(m, labels, "");
    }
    return out;
}

inline std::string format_pbw(const PBWElement& x) {
    if (x.is_zero()) return "0";
    const auto& labels = x.algebra()->labels();
    std::string out;
    for (const auto& [w, c] : x.coeff()) {
        out += format_coeff(c, out.empty());
        out += format_word(w, labels, "");
    }
    return out;
}

inline std::string format_mixed(const MixedElement& x,
                                const std::vector<std::string>& slot_labels) {
    if (x.is_zero()) return "0";
    const auto& glabels = x.algebra()->labels();
    std::string out;
    for (const auto& [k, c] : x.coeff()) {
        out += format_coeff(c, out.empty());
        if (k.u.empty() && k.m == 0) {
            out += "1";
            continue;
        }
        if (!k.u.empty()) {
            out += format_word(k.u, glabels, "u_");
            if (k.m != 0) out += " (x) ";
        }
        if (k.m != 0) out += format_mask(k.m, slot_labels, "c_");
    }
    return out;
}

// labels for a slot: the pair's labels for sub-basis slots, synthesized
// coordinate expressions for solved bases such as p
inline std::vector<std::string> slot_labels(const SpacePtr& sp) {
    std::vector<std::string> out;
    const auto& g = sp->pair().g();
    for (int j = 0; j < sp->dim(); ++j) {
        const SparseVec& v = sp->basis_vector_g(j);
        if (v.size() == 1 && v.begin()->second == Scalar(1)) {
            out.push_back(g.labels()[v.begin()->first]);
        } else {
            std::string s = "(";
            bool first = true;
            for (const auto& [i, c] : v) {
                s += format_coeff(c, first);
                s += g.labels()[i];
                first = false;
            }
            out.push_back(s + ")");
        }
    }
    return out;
}

}  // namespace ncweil
