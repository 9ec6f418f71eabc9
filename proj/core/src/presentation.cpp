#include "dgla/presentation.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "dgla/expr.hpp"

namespace dgla {

namespace {

struct Entry {
    std::string key;
    std::string value;
    int line;
    int key_column;    // 1-based
    int value_column;  // 1-based
};

struct Sections {
    std::vector<Entry> generators, differential, relations, cutoffs;
};

std::string strip(const std::string& s, int* lead = nullptr) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        if (lead) *lead = (int)s.size();
        return "";
    }
    size_t e = s.find_last_not_of(" \t\r");
    if (lead) *lead = (int)b;
    return s.substr(b, e - b + 1);
}

Sections split_sections(const std::string& text) {
    Sections out;
    std::vector<Entry>* current = nullptr;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        int lead = 0;
        std::string s = strip(raw, &lead);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw PresentationError("unterminated section header", line, lead + 1);
            std::string name = strip(s.substr(1, s.size() - 2));
            if (name == "generators") current = &out.generators;
            else if (name == "differential") current = &out.differential;
            else if (name == "relations") current = &out.relations;
            else if (name == "cutoffs") current = &out.cutoffs;
            else
                throw PresentationError("unknown section [" + name + "]", line, lead + 1);
            continue;
        }
        if (!current)
            throw PresentationError("content before any [section]", line, lead + 1);
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw PresentationError("expected 'name = value'", line, lead + 1);
        int klead = 0, vlead = 0;
        std::string key = strip(s.substr(0, eq), &klead);
        std::string value = strip(s.substr(eq + 1), &vlead);
        if (key.empty())
            throw PresentationError("missing name before '='", line, lead + 1);
        if (value.empty())
            throw PresentationError("missing value after '='", line,
                                    lead + (int)eq + 2);
        current->push_back({key, value, line, lead + klead + 1,
                            lead + (int)eq + 2 + vlead});
    }
    return out;
}

int parse_int(const Entry& e, int minimum, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("trailing");
        if (v < minimum)
            throw PresentationError(what + " must be >= " + std::to_string(minimum),
                                    e.line, e.value_column);
        return v;
    } catch (const PresentationError&) {
        throw;
    } catch (const std::exception&) {
        throw PresentationError("expected an integer " + what, e.line,
                                e.value_column);
    }
}

LieElement parse_value_expr(FreeLieContext& ctx, const Entry& e) {
    if (e.value == "0") return LieElement();
    try {
        return parse_lie_expr(ctx, e.value);
    } catch (const ExprError& err) {
        throw PresentationError(err.what(), e.line, e.value_column + err.position);
    }
}

}  // namespace

ParsedPresentation parse_presentation(const std::string& text,
                                      std::optional<int> degree_cutoff_override) {
    Sections sec = split_sections(text);
    if (!sec.differential.empty() && !sec.relations.empty())
        throw PresentationError(
            "a presentation carries either [differential] or [relations], "
            "not both",
            sec.relations.front().line, sec.relations.front().key_column);
    if (sec.generators.empty())
        throw PresentationError("missing [generators] section", 1, 1);

    ParsedPresentation out;
    out.source = text;

    for (const Entry& e : sec.cutoffs) {
        int v = parse_int(e, 1, "cutoff");
        if (e.key == "degree") out.file_degree_cutoff = v;
        else if (e.key == "filtration") out.file_filtration_cutoff = v;
        else if (e.key == "simplicial") out.file_simplicial_cutoff = v;
        else
            throw PresentationError("unknown cutoff '" + e.key +
                                        "' (expected degree, filtration or "
                                        "simplicial)",
                                    e.line, e.key_column);
    }
    out.degree_cutoff = degree_cutoff_override.value_or(
        out.file_degree_cutoff.value_or(8));

    GeneratorSet gens;
    for (const Entry& e : sec.generators) {
        size_t used = 0;
        int deg = 0;
        bool ok = true;
        try {
            deg = std::stoi(e.value, &used);
            ok = used == e.value.size();
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok)
            throw PresentationError("expected an integer degree", e.line,
                                    e.value_column);
        if (deg < 1)
            throw PresentationError("generator '" + e.key + "' has degree " +
                                        std::to_string(deg) +
                                        "; connectedness requires degree >= 1",
                                    e.line, e.value_column);
        if (gens.index_of(e.key) >= 0)
            throw PresentationError("duplicate generator '" + e.key + "'",
                                    e.line, e.key_column);
        gens.add(e.key, deg);
    }

    out.ctx = std::make_shared<FreeLieContext>(std::move(gens), out.degree_cutoff);
    out.dgl = DGL(out.ctx);

    std::map<std::string, int> seen_d;
    for (const Entry& e : sec.differential) {
        int gi = out.ctx->generators().index_of(e.key);
        if (gi < 0)
            throw PresentationError("unknown generator '" + e.key + "'", e.line,
                                    e.key_column);
        if (!seen_d.emplace(e.key, e.line).second)
            throw PresentationError("duplicate differential for '" + e.key + "'",
                                    e.line, e.key_column);
        LieElement v = parse_value_expr(*out.ctx, e);
        int gdeg = out.ctx->generators().degree(gi);
        if (!v.is_zero()) {
            int vdeg = out.ctx->element_degree(v);
            if (vdeg != gdeg - 1)
                throw PresentationError(
                    "differential of '" + e.key + "' must have degree " +
                        std::to_string(gdeg - 1) + ", got degree " +
                        std::to_string(vdeg),
                    e.line, e.value_column);
        }
        out.dgl.set_differential(gi, v);
    }

    out.has_relations = !sec.relations.empty();
    for (const Entry& e : sec.relations) {
        LieElement v = parse_value_expr(*out.ctx, e);
        try {
            (void)out.ctx->element_degree(v);
        } catch (const std::logic_error&) {
            throw PresentationError("relation '" + e.key +
                                        "' must be homogeneous",
                                    e.line, e.value_column);
        }
        out.relations.emplace_back(e.key, v);
    }
    return out;
}

ParsedPresentation parse_presentation_file(const std::string& path,
                                           std::optional<int> degree_cutoff_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open presentation file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str(), degree_cutoff_override);
}

std::string serialize_presentation(const ParsedPresentation& p) {
    std::ostringstream out;
    out << "[generators]\n";
    const GeneratorSet& gens = p.ctx->generators();
    for (int i = 0; i < gens.size(); ++i)
        out << gens.at(i).name << " = " << gens.at(i).degree << "\n";

    bool wrote_d = false;
    for (int i = 0; i < gens.size(); ++i) {
        const LieElement& v = p.dgl.differential_on(i);
        if (v.is_zero()) continue;
        if (!wrote_d) {
            out << "\n[differential]\n";
            wrote_d = true;
        }
        out << gens.at(i).name << " = " << p.ctx->to_string(v) << "\n";
    }

    if (p.has_relations) {
        out << "\n[relations]\n";
        for (auto& [label, v] : p.relations)
            out << label << " = " << p.ctx->to_string(v) << "\n";
    }

    if (p.file_degree_cutoff || p.file_filtration_cutoff ||
        p.file_simplicial_cutoff) {
        out << "\n[cutoffs]\n";
        if (p.file_degree_cutoff) out << "degree = " << *p.file_degree_cutoff << "\n";
        if (p.file_filtration_cutoff)
            out << "filtration = " << *p.file_filtration_cutoff << "\n";
        if (p.file_simplicial_cutoff)
            out << "simplicial = " << *p.file_simplicial_cutoff << "\n";
    }
    return out.str();
}

}  // namespace dgla
