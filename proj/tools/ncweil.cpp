// Command-line surface: validate pair documents, print the cubic Dirac data,
// compute Dirac cohomology with the central-character comparison, and run the
// verification suites. Exit codes: 0 all pass, 1 verification failure,
// 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ncweil/pretty.hpp"
#include "ncweil/verify.hpp"

using namespace ncweil;

namespace {

struct CommonOpts {
    std::string file;
    int cap = 0;             // 0 = take from the document
    std::string field;       // empty = take from the document
    std::string format = "text";
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("file", o.file, "pair-description JSON document")->required();
    cmd->add_option("--cap", o.cap, "filtration cap override");
    cmd->add_option("--field", o.field, "working field override (Q or Qi)")
        ->check(CLI::IsMember({"Q", "Qi"}));
    cmd->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output", o.output, "write the report to a file");
}

PairDocument read_document(const CommonOpts& o) {
    std::ifstream in(o.file);
    if (!in) throw document_error(o.file, "cannot open file");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    PairDocument d = parse_pair_document(text);
    if (o.cap > 0) d.cap = o.cap;
    if (o.field == "Q") d.field = Field::Q;
    if (o.field == "Qi") d.field = Field::Qi;
    return d;
}

int emit(Report& rep, const CommonOpts& o, const Stopwatch& sw) {
    rep.elapsed_ms = sw.ms();
    rep.sort();
    std::string text =
        o.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text();
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output);
        if (!out) {
            std::cerr << "cannot write " << o.output << "\n";
            return 2;
        }
        out << text;
    }
    return rep.all_pass() ? 0 : 1;
}

json settings_of(const PairDocument& d) {
    return {{"name", d.name},
            {"cap", d.cap},
            {"field", d.field == Field::Qi ? "Qi" : "Q"}};
}

int cmd_validate(const CommonOpts& o) {
    Stopwatch sw;
    PairDocument d = read_document(o);
    Report rep;
    rep.command = "validate " + d.name;
    rep.settings = settings_of(d);
    try {
        LoadedPair lp = load_pair(d);
        json w = {{"dim_g", lp.pair->g().dim()},
                  {"dim_r", lp.pair->dim_r()},
                  {"dim_p", lp.pair->dim_p()}};
        json pb = json::array();
        auto labels = slot_labels(QuadraticSpace::p_slot(lp.pair));
        for (const auto& l : labels) pb.push_back(l);
        w["p_basis"] = pb;
        w["modules"] = json::array();
        for (const auto& [n, m] : lp.modules) w["modules"].push_back(n);
        rep.add(CheckRecord::passed("pair-valid", w));
    } catch (const validation_error& e) {
        rep.add(CheckRecord::failed("pair-valid", {{"diagnostic", e.what()}}));
    }
    return emit(rep, o, sw);
}

int cmd_dirac(const CommonOpts& o) {
    Stopwatch sw;
    PairDocument d = read_document(o);
    LoadedPair lp = load_pair(d);
    Report rep;
    rep.command = "dirac " + d.name;
    rep.settings = settings_of(d);
    DiracContext ctx = make_dirac_context(lp.pair, d.cap);
    auto plabels = slot_labels(ctx.p_slot);
    MixedElement D = ctx.dirac();
    ExteriorElement gamma = cartan_element(ctx.p_slot);
    json w;
    w["dirac"] = format_mixed(D, plabels);
    w["gamma_p"] = format_exterior(gamma, plabels);
    json alphas = json::object();
    for (int a = 0; a < lp.pair->dim_r(); ++a)
        alphas[lp.pair->g().labels()[lp.pair->r_indices()[a]]] =
            format_exterior(ctx.alpha[a], plabels);
    w["alpha"] = std::move(alphas);
    json xis = json::object();
    for (int a = 0; a < lp.pair->dim_r(); ++a)
        xis[lp.pair->g().labels()[lp.pair->r_indices()[a]]] = format_mixed(
            xi_map(ctx, PBWElement::generator(ctx.r_lie, d.cap, a)), plabels);
    w["xi"] = std::move(xis);
    rep.add(CheckRecord::passed("dirac-element", w));
    return emit(rep, o, sw);
}

int cmd_cohomology(const CommonOpts& o, const std::string& module_name,
                   const std::string& zname) {
    Stopwatch sw;
    PairDocument d = read_document(o);
    LoadedPair lp = load_pair(d);
    Report rep;
    rep.command = "cohomology " + d.name;
    rep.settings = settings_of(d);
    if (zname != "casimir") {
        std::cerr << "only --z casimir is available\n";
        return 2;
    }
    DiracContext ctx = make_dirac_context(lp.pair, d.cap);
    SpinorModule S(ctx.p_slot, d.field);
    PBWElement Om = casimir(*lp.pair, d.cap);
    std::vector<std::pair<std::string, const GModule*>> mods;
    for (const auto& [n, m] : lp.modules)
        if (module_name.empty() || module_name == n) mods.emplace_back(n, &m);
    if (mods.empty()) {
        std::cerr << "no module " << (module_name.empty() ? "blocks" : module_name)
                  << " in the document\n";
        return 2;
    }
    for (const auto& [name, V] : mods) {
        Matrix D = dirac_matrix(*V, S);
        DiracCohomology H = dirac_cohomology(D);
        json w;
        w["module"] = name;
        w["dim_hd"] = H.dim();
        // the r-action on H_D, plus weights when r is one-dimensional abelian
        json acts = json::object();
        for (int a = 0; a < lp.pair->dim_r(); ++a) {
            Matrix act = quotient_action(H, xi_action(ctx, *V, S, a));
            json mat = json::array();
            for (int i = 0; i < act.rows(); ++i) {
                json row = json::array();
                for (int j = 0; j < act.cols(); ++j) row.push_back(act.at(i, j).str());
                mat.push_back(std::move(row));
            }
            acts[lp.pair->g().labels()[lp.pair->r_indices()[a]]] = std::move(mat);
        }
        w["r_action"] = std::move(acts);
        if (lp.pair->dim_r() == 1 && H.dim() > 0) {
            Matrix act = quotient_action(H, xi_action(ctx, *V, S, 0));
            Spectrum spec = rational_eigenvalues(act);
            json ws = json::array();
            for (const auto& [root, mult] : spec.roots)
                for (int k = 0; k < mult; ++k) ws.push_back(root.str());
            w["weights"] = std::move(ws);
            if (spec.unresolved_degree > 0)
                w["weights_note"] = "non-rational spectrum of degree " +
                                    std::to_string(spec.unresolved_degree);
        }
        CentralCharacterReport cc = verify_central_character(ctx, *V, S, Om);
        if (!cc.has_central_character) {
            w["central_character"] = "none (rho(z) is not scalar)";
            rep.add(CheckRecord::skip("cohomology-" + name, w));
            continue;
        }
        w["chi"] = cc.chi.str();
        w["eta_matches"] = cc.matches;
        rep.add(cc.matches ? CheckRecord::passed("cohomology-" + name, w)
                           : CheckRecord::failed("cohomology-" + name, w));
    }
    return emit(rep, o, sw);
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
    Stopwatch sw;
    PairDocument d = read_document(o);
    LoadedPair lp = load_pair(d);
    Report rep;
    rep.command = "verify " + d.name + " --suite " + suite;
    rep.settings = settings_of(d);
    const int cap = std::max(d.cap, 6);
    bool all = suite == "all";
    if (all || suite == "weil") {
        rep.add_all(suite_gstar(lp.pair, 3));
        rep.add_all(suite_differential(lp.pair, 2, cap));
        rep.add_all(suite_flip_sign(lp.pair));
    }
    if (all || suite == "dirac") {
        rep.add_all(suite_clifford(lp.pair));
        rep.add_all(suite_dirac(lp.pair, cap));
        rep.add_all(suite_point_identification(lp.pair, 2, cap));
        rep.add_all(suite_spinor(lp.pair, lp.modules, d.field, cap));
    }
    if (all || suite == "theorem33") rep.add_all(suite_theorem33(lp.pair, 2, cap));
    if (all || suite == "theorem34") {
        int hcap = lp.pair->dim_r() <= 1 ? 1 : 2;
        rep.add_all(suite_theorem34(lp.pair, hcap, cap));
    }
    if (all && !lp.modules.empty())
        rep.add_all(suite_central_characters(lp.pair, lp.modules, d.field, cap));
    return emit(rep, o, sw);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact noncommutative Weil algebra and cubic Dirac calculator"};
    app.require_subcommand(1);

    CommonOpts vo, dopt, co, ve;
    auto* validate = app.add_subcommand("validate", "validate a pair document");
    add_common(validate, vo);

    auto* dirac = app.add_subcommand("dirac", "print the cubic Dirac data");
    add_common(dirac, dopt);

    auto* coh = app.add_subcommand("cohomology", "Dirac cohomology of module blocks");
    add_common(coh, co);
    std::string module_name, zname = "casimir";
    coh->add_option("--module", module_name, "module block name (default: all)");
    coh->add_option("--z", zname, "central element (casimir)");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, ve);
    std::string suite = "all";
    verify->add_option("--suite", suite, "suite selection")
        ->check(CLI::IsMember({"weil", "dirac", "theorem33", "theorem34", "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(vo);
        if (dirac->parsed()) return cmd_dirac(dopt);
        if (coh->parsed()) return cmd_cohomology(co, module_name, zname);
        if (verify->parsed()) return cmd_verify(ve, suite);
    } catch (const document_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "invalid pair: " << e.what() << "\n";
        return 1;
    } catch (const FieldExtensionRequired& e) {
        std::cerr << "field extension required: " << e.what()
                  << " (rerun with --field Qi)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
