#pragma once
// Pair-description documents: UTF-8 JSON carrying basis labels, structure
// constants and the Gram matrix as exact strings, the r sub-basis, optional
// module blocks, and session settings. Parsing produces a validated pair or
// a positioned diagnostic; serialization of a canonical document round-trips.

#include <json.hpp>

#include "specrep.hpp"

namespace ncweil {

using nlohmann::json;

struct document_error : std::runtime_error {
    document_error(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where(where), detail(what) {}
    std::string where;
    std::string detail;
};

struct PairDocument {
    std::string name;
    Field field = Field::Q;
    int cap = 8;
    std::vector<std::string> basis;
    // brackets keyed "a,b" with a before b in basis order; values label -> scalar
    std::map<std::string, std::map<std::string, Scalar>> brackets;
    std::vector<std::vector<Scalar>> form;
    std::vector<std::string> r_labels;
    struct Module {
        int dim = 0;
        std::map<std::string, std::vector<std::vector<Scalar>>> action;  // label -> matrix
    };
    std::map<std::string, Module> modules;
};

namespace detail {

inline Scalar parse_scalar_at(const json& j, const std::string& where, Field field) {
    if (!j.is_string()) throw document_error(where, "exact scalars must be strings");
    Scalar s;
    try {
        s = Scalar::parse(j.get<std::string>());
    } catch (const parse_error& e) {
        throw document_error(where, e.what());
    }
    if (field == Field::Q && !s.is_rational())
        throw document_error(where, "imaginary part requires field \"Qi\"");
    return s;
}

inline std::vector<std::vector<Scalar>> parse_matrix_at(const json& j,
                                                        const std::string& where,
                                                        Field field) {
    if (!j.is_array()) throw document_error(where, "expected a matrix (array of rows)");
    std::vector<std::vector<Scalar>> out;
    for (size_t r = 0; r < j.size(); ++r) {
        const auto& row = j[r];
        if (!row.is_array()) throw document_error(where, "row " + std::to_string(r) +
                                                             " is not an array");
        std::vector<Scalar> rv;
        for (size_t c = 0; c < row.size(); ++c)
            rv.push_back(parse_scalar_at(
                row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                field));
        out.push_back(std::move(rv));
    }
    return out;
}

}  // namespace detail

inline PairDocument parse_pair_document(const json& j) {
    if (!j.is_object()) throw document_error("$", "document must be a JSON object");
    PairDocument d;
    d.name = j.value("name", std::string("unnamed"));
    if (j.contains("field")) {
        std::string f = j.at("field").get<std::string>();
        if (f == "Q") d.field = Field::Q;
        else if (f == "Qi") d.field = Field::Qi;
        else throw document_error("field", "must be \"Q\" or \"Qi\"");
    }
    d.cap = j.value("cap", 8);
    if (d.cap < 1 || d.cap > 16) throw document_error("cap", "cap out of range [1,16]");
    if (!j.contains("basis") || !j.at("basis").is_array())
        throw document_error("basis", "missing basis label array");
    for (const auto& b : j.at("basis")) d.basis.push_back(b.get<std::string>());
    std::map<std::string, int> index;
    for (size_t i = 0; i < d.basis.size(); ++i) {
        if (index.count(d.basis[i]))
            throw document_error("basis", "duplicate label '" + d.basis[i] + "'");
        index[d.basis[i]] = static_cast<int>(i);
    }
    auto label_index = [&](const std::string& l, const std::string& where) {
        auto it = index.find(l);
        if (it == index.end())
            throw document_error(where, "unknown basis label '" + l + "'");
        return it->second;
    };
    if (j.contains("brackets")) {
        if (!j.at("brackets").is_object())
            throw document_error("brackets", "expected an object keyed \"a,b\"");
        for (const auto& [key, val] : j.at("brackets").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw document_error("brackets." + key, "key must be \"a,b\"");
            std::string la = key.substr(0, comma), lb = key.substr(comma + 1);
            int ia = label_index(la, "brackets." + key);
            int ib = label_index(lb, "brackets." + key);
            if (ia == ib)
                throw document_error("brackets." + key, "bracket of a vector with itself");
            if (ia > ib)
                throw document_error("brackets." + key,
                                     "list brackets with the earlier basis label first");
            std::map<std::string, Scalar> coeffs;
            for (const auto& [lk, cv] : val.items()) {
                label_index(lk, "brackets." + key + "." + lk);
                Scalar s = detail::parse_scalar_at(cv, "brackets." + key + "." + lk, d.field);
                if (!s.is_zero()) coeffs[lk] = s;
            }
            if (!coeffs.empty()) d.brackets[key] = std::move(coeffs);
        }
    }
    if (!j.contains("form")) throw document_error("form", "missing Gram matrix");
    d.form = detail::parse_matrix_at(j.at("form"), "form", d.field);
    if (d.form.size() != d.basis.size())
        throw document_error("form", "Gram size does not match basis");
    for (const auto& row : d.form)
        if (row.size() != d.basis.size())
            throw document_error("form", "Gram row size does not match basis");
    if (!j.contains("r") || !j.at("r").is_array())
        throw document_error("r", "missing r sub-basis label array");
    for (const auto& l : j.at("r")) d.r_labels.push_back(l.get<std::string>());
    for (const auto& l : d.r_labels) label_index(l, "r");
    if (j.contains("modules")) {
        for (const auto& [mname, mj] : j.at("modules").items()) {
            PairDocument::Module m;
            m.dim = mj.value("dim", 0);
            if (m.dim <= 0)
                throw document_error("modules." + mname + ".dim", "positive dim required");
            if (!mj.contains("action"))
                throw document_error("modules." + mname, "missing action matrices");
            for (const auto& [lk, mat] : mj.at("action").items()) {
                label_index(lk, "modules." + mname + ".action");
                auto mm = detail::parse_matrix_at(
                    mat, "modules." + mname + ".action." + lk, d.field);
                if (mm.size() != static_cast<size_t>(m.dim))
                    throw document_error("modules." + mname + ".action." + lk,
                                         "matrix size != dim");
                for (const auto& row : mm)
                    if (row.size() != static_cast<size_t>(m.dim))
                        throw document_error("modules." + mname + ".action." + lk,
                                             "matrix row size != dim");
                m.action[lk] = std::move(mm);
            }
            for (const auto& l : d.basis)
                if (!m.action.count(l))
                    throw document_error("modules." + mname + ".action",
                                         "missing matrix for basis label '" + l + "'");
            d.modules[mname] = std::move(m);
        }
    }
    return d;
}

inline PairDocument parse_pair_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw document_error("$", std::string("JSON syntax: ") + e.what());
    }
    return parse_pair_document(j);
}

inline json serialize_pair_document(const PairDocument& d) {
    json j;
    j["name"] = d.name;
    j["field"] = d.field == Field::Qi ? "Qi" : "Q";
    j["cap"] = d.cap;
    j["basis"] = d.basis;
    json br = json::object();
    for (const auto& [k, coeffs] : d.brackets) {
        json row = json::object();
        for (const auto& [l, s] : coeffs) row[l] = s.str();
        br[k] = std::move(row);
    }
    j["brackets"] = std::move(br);
    json fm = json::array();
    for (const auto& row : d.form) {
        json r = json::array();
        for (const auto& s : row) r.push_back(s.str());
        fm.push_back(std::move(r));
    }
    j["form"] = std::move(fm);
    j["r"] = d.r_labels;
    if (!d.modules.empty()) {
        json ms = json::object();
        for (const auto& [n, m] : d.modules) {
            json mj;
            mj["dim"] = m.dim;
            json act = json::object();
            for (const auto& [l, mat] : m.action) {
                json mm = json::array();
                for (const auto& row : mat) {
                    json r = json::array();
                    for (const auto& s : row) r.push_back(s.str());
                    mm.push_back(std::move(r));
                }
                act[l] = std::move(mm);
            }
            mj["action"] = std::move(act);
            ms[n] = std::move(mj);
        }
        j["modules"] = std::move(ms);
    }
    return j;
}

// document -> validated pair (+ validated modules)
struct LoadedPair {
    PairDocument doc;
    PairPtr pair;
    std::map<std::string, GModule> modules;
};

inline LoadedPair load_pair(const PairDocument& d) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < d.basis.size(); ++i) index[d.basis[i]] = static_cast<int>(i);
    std::map<std::pair<int, int>, SparseVec> br;
    for (const auto& [key, coeffs] : d.brackets) {
        auto comma = key.find(',');
        int ia = index.at(key.substr(0, comma));
        int ib = index.at(key.substr(comma + 1));
        SparseVec v;
        for (const auto& [l, s] : coeffs) v[index.at(l)] = s;
        br[{ia, ib}] = std::move(v);
    }
    auto g = std::make_shared<const LieAlgebra>(d.basis, std::move(br));
    std::vector<int> r_idx;
    for (const auto& l : d.r_labels) r_idx.push_back(index.at(l));
    LoadedPair out{d, validate_pair(g, InvariantForm(*g, d.form), std::move(r_idx)), {}};
    for (const auto& [name, m] : d.modules) {
        GModule gm;
        gm.name = name;
        gm.dim = m.dim;
        for (const auto& l : d.basis) {
            Matrix mat(m.dim, m.dim);
            const auto& src = m.action.at(l);
            for (int i = 0; i < m.dim; ++i)
                for (int jx = 0; jx < m.dim; ++jx) mat.at(i, jx) = src[i][jx];
            gm.action.push_back(std::move(mat));
        }
        gm.validate(*g);
        out.modules[name] = std::move(gm);
    }
    return out;
}

}  // namespace ncweil
