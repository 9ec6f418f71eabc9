// Command-line front-end: parse a sectioned presentation file, run one of
// the engine's computations, and emit a deterministic schema-versioned
// report (JSON or text).  Exit codes: 0 success, 1 validation or diagnostic
// failure, 2 cutoff-incomplete result.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dgla/dgl.hpp"
#include "dgla/homology.hpp"
#include "dgla/jacobi.hpp"
#include "dgla/models.hpp"
#include "dgla/presentation.hpp"
#include "dgla/report.hpp"
#include "dgla/resolution.hpp"

using nlohmann::ordered_json;
using namespace dgla;

namespace {

struct CommonOpts {
    std::string input;
    int deg_cutoff = 8;
    int filt_cutoff = 4;
    int simp_cutoff = 4;
    bool deg_set = false, filt_set = false, simp_set = false;
    std::string out_path;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("input", o.input, "presentation file")->required();
    cmd->add_option("--deg-cutoff", o.deg_cutoff,
                    "internal degree cutoff (default 8)");
    cmd->add_option("--filt-cutoff", o.filt_cutoff,
                    "filtration cutoff (default 4)");
    cmd->add_option("--simp-cutoff", o.simp_cutoff,
                    "simplicial dimension cutoff (default 4)");
    cmd->add_option("--out", o.out_path, "write the report here (default stdout)");
    cmd->add_option("--format", o.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
}

void record_flag_counts(CLI::App* cmd, CommonOpts& o) {
    o.deg_set = cmd->count("--deg-cutoff") > 0;
    o.filt_set = cmd->count("--filt-cutoff") > 0;
    o.simp_set = cmd->count("--simp-cutoff") > 0;
}

// flag > file [cutoffs] entry > default
int effective(bool flag_set, int flag_value, const std::optional<int>& file_value,
              int fallback) {
    if (flag_set) return flag_value;
    return file_value.value_or(fallback);
}

void emit(const std::string& bytes, const CommonOpts& o) {
    if (o.out_path.empty()) {
        std::cout << bytes;
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + o.out_path);
        f << bytes;
    }
}

int emit_report(Report& rep, const ordered_json& payload, const CommonOpts& o,
                bool diagnostic_failure) {
    rep.conventions = standard_conventions();
    rep.payload_json = payload.dump();
    emit(o.format == "text" ? rep.render_text() : rep.render_json(), o);
    if (diagnostic_failure) return 1;
    // exit 2 signals a cutoff-incomplete result; purely informational notes
    // (e.g. "input already minimal") do not change the exit code
    for (auto& n : rep.notes)
        if (n.find("cutoff") != std::string::npos) return 2;
    return 0;
}

int emit_error(const std::string& command, const CommonOpts& o,
               const std::string& message, int line = 0, int column = 0) {
    ordered_json j;
    j["schema"] = "dgla-report/1";
    j["command"] = command;
    ordered_json e;
    e["message"] = message;
    if (line > 0) {
        e["line"] = line;
        e["column"] = column;
    }
    j["error"] = e;
    if (o.format == "text") {
        std::string text = "schema: dgla-report/1\ncommand: " + command +
                           "\nerror: " + message + "\n";
        emit(text, o);
    } else {
        emit(j.dump(2) + "\n", o);
    }
    return 1;
}

ordered_json json_of_betti(const std::map<std::pair<int, int>, int>& betti) {
    ordered_json arr = ordered_json::array();
    for (auto& [st, dim] : betti)
        arr.push_back({{"s", st.first}, {"t", st.second}, {"dim", dim}});
    return arr;
}

ordered_json json_of_table(const CohomologyTable& t) {
    ordered_json arr = ordered_json::array();
    for (auto& [st, dim] : t.dims)
        arr.push_back({{"s", st.first}, {"t", st.second}, {"dim", dim}});
    return arr;
}

// ---- per-command payloads ----

int run_validate(const ParsedPresentation& p, Report& rep, const CommonOpts& o) {
    ordered_json payload;
    payload["serialized_digest"] = content_digest(serialize_presentation(p));
    if (p.has_relations) {
        payload["mode"] = "graded-lie";
        GLPresentation pres{p.ctx, {}};
        for (auto& [label, v] : p.relations) pres.relations.push_back(v);
        PresentedLie L(std::move(pres));
        ordered_json dims = ordered_json::array();
        for (int n = 1; n <= p.degree_cutoff; ++n)
            dims.push_back({{"degree", n}, {"dim", L.dim(n)}});
        payload["dims"] = dims;
        rep.notes = L.cutoff_notes();
        return emit_report(rep, payload, o, false);
    }
    payload["mode"] = "dgl";
    ValidationReport v = p.dgl.validate();
    payload["ok"] = v.ok();
    ordered_json issues = ordered_json::array();
    for (auto& i : v.issues)
        issues.push_back({{"generator", i.generator}, {"residue", i.residue}});
    payload["issues"] = issues;
    return emit_report(rep, payload, o, !v.ok());
}

int run_homology(const ParsedPresentation& p, Report& rep, const CommonOpts& o) {
    HomologyPresentation h = p.dgl.chain_homology(p.degree_cutoff - 1);
    ordered_json degrees = ordered_json::array();
    for (auto& [n, hd] : h.by_degree) {
        ordered_json reps = ordered_json::array();
        for (auto& r : hd.representatives) reps.push_back(p.ctx->to_string(r));
        degrees.push_back(
            {{"degree", n}, {"betti", hd.betti}, {"representatives", reps}});
    }
    ordered_json payload;
    payload["through"] = h.through;
    payload["degrees"] = degrees;
    return emit_report(rep, payload, o, false);
}

int run_minimal_model(const ParsedPresentation& p, Report& rep,
                      const CommonOpts& o) {
    MinimalModel m = minimal_model(p.dgl, p.degree_cutoff - 1);
    const GeneratorSet& gens = m.model.lie().generators();
    ordered_json jgens = ordered_json::array();
    for (int i = 0; i < gens.size(); ++i) {
        jgens.push_back(
            {{"name", gens.at(i).name},
             {"degree", gens.at(i).degree},
             {"differential", m.model.lie().to_string(m.model.differential_on(i))},
             {"image", p.ctx->to_string(m.phi.images.count(i)
                                            ? m.phi.images.at(i)
                                            : LieElement())}});
    }
    ordered_json payload;
    payload["generators"] = jgens;
    payload["minimal"] = m.model.is_minimal();
    payload["quasi_iso_verified"] = verify_quasi_iso(m.phi, p.degree_cutoff - 1);
    rep.notes = m.notes;
    return emit_report(rep, payload, o, false);
}

ordered_json json_of_bigraded(const BigradedModel& b) {
    ordered_json jgens = ordered_json::array();
    for (auto& g : b.gens)
        jgens.push_back({{"name", g.name},
                         {"filtration", g.filtration},
                         {"internal_degree", g.internal_degree},
                         {"differential", b.model.lie().to_string(
                                              b.model.differential_on(g.gen_index))}});
    return jgens;
}

int run_bigraded_model(const ParsedPresentation& p, Report& rep,
                       const CommonOpts& o, int fc, int ic) {
    std::shared_ptr<const GradedLieAlgebra> target;
    std::string target_kind;
    if (p.has_relations) {
        GLPresentation pres{p.ctx, {}};
        for (auto& [label, v] : p.relations) pres.relations.push_back(v);
        target = std::make_shared<PresentedLie>(std::move(pres));
        target_kind = "presented graded Lie algebra";
    } else {
        target = std::make_shared<HomologyLie>(p.dgl, ic);
        target_kind = "chain homology of the input";
    }
    BigradedModel b = bigraded_model(target, fc, ic);
    std::vector<std::string> issues = verify_bigraded(b);
    ordered_json payload;
    payload["target"] = target_kind;
    payload["generators"] = json_of_bigraded(b);
    payload["verified"] = issues.empty();
    payload["issues"] = issues;
    rep.notes = b.notes;
    return emit_report(rep, payload, o, !issues.empty());
}

int run_filtered_model(const ParsedPresentation& p, Report& rep,
                       const CommonOpts& o, int fc, int ic) {
    FilteredModel f = filtered_model(p.dgl, fc, ic);
    ordered_json jgens = ordered_json::array();
    for (auto& g : f.gens)
        jgens.push_back({{"name", g.name},
                         {"filtration", g.filtration},
                         {"internal_degree", g.internal_degree},
                         {"differential", f.model.lie().to_string(
                                              f.model.differential_on(g.gen_index))}});
    ordered_json payload;
    payload["generators"] = jgens;
    payload["coformal"] = f.coformal();
    payload["valid"] = f.model.validate().ok();
    rep.notes = f.notes;
    return emit_report(rep, payload, o, !f.model.validate().ok());
}

int run_coformal(const ParsedPresentation& p, Report& rep, const CommonOpts& o,
                 int fc, int ic) {
    ObstructionReport r = coformal_check(p.dgl, fc, ic);
    ordered_json payload;
    payload["coformal"] = r.coformal;
    if (r.first_order)
        payload["n0"] = *r.first_order;
    else
        payload["n0"] = nullptr;
    ordered_json classes = ordered_json::array();
    for (auto& c : r.classes)
        classes.push_back({{"generator", c.generator},
                           {"filtration", c.filtration},
                           {"internal_degree", c.internal_degree},
                           {"component", c.component}});
    payload["classes"] = classes;
    return emit_report(rep, payload, o, false);
}

int run_resolution(const ParsedPresentation& p, Report& rep,
                   const CommonOpts& o, int sc) {
    CanonicalResolution w(p.dgl, sc, p.degree_cutoff);
    w.materialize_all();
    std::vector<std::string> issues = w.validate();
    ordered_json levels = ordered_json::array();
    for (int n = 0; n <= sc; ++n) {
        int spheres = 0;
        for (auto& g : w.generators(n)) spheres += g.sphere ? 1 : 0;
        levels.push_back({{"level", n},
                          {"generators", (int)w.generators(n).size()},
                          {"sphere_generators", spheres}});
    }
    ordered_json payload;
    payload["levels"] = levels;
    payload["verified"] = issues.empty();
    payload["issues"] = issues;
    return emit_report(rep, payload, o, !issues.empty());
}

int run_dgl_homology(const ParsedPresentation& p, Report& rep,
                     const CommonOpts& o, int sc) {
    BigradedHomology h = bigraded_homology(p.dgl, sc - 1, p.degree_cutoff - 1);
    ordered_json payload;
    payload["route"] = h.route;
    payload["simp_through"] = h.simp_through;
    payload["internal_through"] = h.internal_through;
    payload["betti"] = json_of_betti(h.betti);
    rep.notes = h.notes;
    return emit_report(rep, payload, o, false);
}

int run_cohomology(const ParsedPresentation& p, Report& rep,
                   const CommonOpts& o, int sc) {
    int it = p.degree_cutoff - 1;
    GradedDimension coeffs = p.dgl.chain_homology(it).betti_table();
    int t_min = 1 - it, t_max = it - 1;
    CanonicalResolution w(p.dgl, sc, p.degree_cutoff);
    BigradedHomology h = bigraded_homology(w, sc - 1, it);
    CohomologyTable uct = cohomology(h, coeffs, t_min, t_max);
    CohomologyTable direct = cohomology_direct(w, coeffs, sc - 1, it, t_min, t_max);
    ordered_json payload;
    payload["coefficients"] = "chain homology of the input";
    payload["t_range"] = {{"min", t_min}, {"max", t_max}};
    payload["universal_coefficients"] = json_of_table(uct);
    payload["direct"] = json_of_table(direct);
    bool agree = uct.dims == direct.dims;
    payload["routes_agree"] = agree;
    rep.notes = h.notes;
    return emit_report(rep, payload, o, !agree);
}

int run_jacobi_check(const ParsedPresentation& p, Report& rep,
                     const CommonOpts& o) {
    bool ok = is_jacobi(p.dgl, p.degree_cutoff - 1);
    ordered_json payload;
    payload["jacobi"] = ok;
    payload["through"] = p.degree_cutoff - 1;
    return emit_report(rep, payload, o, !ok);
}

int dispatch(const std::string& command, const CommonOpts& o) {
    ParsedPresentation p = parse_presentation_file(
        o.input, o.deg_set ? std::optional<int>(o.deg_cutoff) : std::nullopt);
    int fc = effective(o.filt_set, o.filt_cutoff, p.file_filtration_cutoff, 4);
    int sc = effective(o.simp_set, o.simp_cutoff, p.file_simplicial_cutoff, 4);

    Report rep;
    rep.command = command;
    rep.input_digest = content_digest(p.source);
    rep.cutoffs = {{"degree", p.degree_cutoff}};
    if (command == "bigraded-model" || command == "filtered-model" ||
        command == "coformal")
        rep.cutoffs.emplace_back("filtration", fc);
    if (command == "resolution" || command == "dgl-homology" ||
        command == "cohomology")
        rep.cutoffs.emplace_back("simplicial", sc);

    if (command != "validate" && command != "bigraded-model" &&
        p.has_relations)
        return emit_error(command, o,
                          "command '" + command +
                              "' needs a differential presentation, not a "
                              "relations presentation");

    if (command == "validate") return run_validate(p, rep, o);
    if (command == "homology") return run_homology(p, rep, o);
    if (command == "minimal-model") return run_minimal_model(p, rep, o);
    if (command == "jacobi-check") return run_jacobi_check(p, rep, o);
    if (command == "resolution") return run_resolution(p, rep, o, sc);
    if (command == "dgl-homology") return run_dgl_homology(p, rep, o, sc);
    if (command == "cohomology") return run_cohomology(p, rep, o, sc);

    // model commands need bracket headroom through filtration + internal
    // degree; re-read the input with the wider context cutoff
    int ic = p.degree_cutoff;
    ParsedPresentation wide = parse_presentation(p.source, fc + ic);
    if (command == "bigraded-model")
        return run_bigraded_model(wide, rep, o, fc, ic);
    if (command == "filtered-model")
        return run_filtered_model(wide, rep, o, fc, ic);
    if (command == "coformal") return run_coformal(wide, rep, o, fc, ic);
    throw std::logic_error("unhandled command " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic engine for differential graded Lie algebras"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "parse the presentation and check its invariants"},
        {"homology", "betti numbers and representatives of chain homology"},
        {"minimal-model", "free model with decomposable differential"},
        {"bigraded-model", "stagewise free model of the (homology) Lie algebra"},
        {"filtered-model", "perturbed bigraded model of the input"},
        {"coformal", "first-order obstruction report (n0)"},
        {"resolution", "canonical free simplicial resolution summary"},
        {"dgl-homology", "bigraded homology via the canonical resolution"},
        {"cohomology", "cohomology with self-coefficients, two routes"},
        {"jacobi-check", "antisymmetry and Jacobi identity on homology"},
    };

    std::map<std::string, CommonOpts> opts;
    std::map<std::string, CLI::App*> subs;
    for (auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, opts[name]);
        subs[name] = sub;
    }

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    CommonOpts& o = opts[command];
    record_flag_counts(subs[command], o);

    auto start = std::chrono::steady_clock::now();
    int code;
    try {
        code = dispatch(command, o);
    } catch (const PresentationError& e) {
        return emit_error(command, o, e.what(), e.line, e.column);
    } catch (const std::exception& e) {
        return emit_error(command, o, e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cerr << command << ": " << ms << " ms\n";
    return code;
}
