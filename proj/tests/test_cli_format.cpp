#include "doctest.h"

#include <string>

#include "json.hpp"

#include "dgla/expr.hpp"
#include "dgla/presentation.hpp"
#include "dgla/report.hpp"

using namespace dgla;

namespace {
const std::string kFixtureDir = DGLA_FIXTURE_DIR;
}

TEST_CASE("ladder fixture parses to a valid DGL with its file cutoffs") {
    ParsedPresentation p =
        parse_presentation_file(kFixtureDir + "/ladder4.dgl");
    CHECK(!p.has_relations);
    CHECK(p.ctx->generators().size() == 8);
    CHECK(p.ctx->generators().degree(p.ctx->generators().index_of("a")) == 1);
    CHECK(p.ctx->generators().degree(p.ctx->generators().index_of("x")) == 4);
    CHECK(p.file_degree_cutoff == 5);
    CHECK(p.file_filtration_cutoff == 2);
    CHECK(p.file_simplicial_cutoff == 2);
    CHECK(p.degree_cutoff == 5);
    CHECK(p.dgl.validate().ok());
    int xi = p.ctx->generators().index_of("x");
    CHECK(p.dgl.differential_on(xi) == parse_lie_expr(*p.ctx, "[[b,a],c]"));
}

TEST_CASE("relations fixture parses in graded-Lie mode") {
    ParsedPresentation p =
        parse_presentation_file(kFixtureDir + "/odd-abelian.gl");
    CHECK(p.has_relations);
    REQUIRE(p.relations.size() == 1);
    CHECK(p.relations[0].first == "r1");
    CHECK(p.relations[0].second == parse_lie_expr(*p.ctx, "[a,a]"));
    CHECK(p.degree_cutoff == 4);
}

TEST_CASE("degree-0 generators are rejected with the connectedness message") {
    try {
        parse_presentation("[generators]\ne = 0\n");
        FAIL("expected PresentationError");
    } catch (const PresentationError& err) {
        CHECK(std::string(err.what()).find("connectedness requires degree >= 1") !=
              std::string::npos);
        CHECK(err.line == 2);
        CHECK(err.column == 5);
    }
}

TEST_CASE("degree-inconsistent differentials are rejected") {
    std::string text = "[generators]\nx = 4\na = 1\n[differential]\nx = a\n";
    try {
        parse_presentation(text);
        FAIL("expected PresentationError");
    } catch (const PresentationError& err) {
        CHECK(std::string(err.what()).find("must have degree 3") !=
              std::string::npos);
        CHECK(err.line == 5);
    }
}

TEST_CASE("unknown names in differential values and keys are rejected") {
    CHECK_THROWS_AS(
        parse_presentation("[generators]\nx = 2\n[differential]\ny = x\n"),
        PresentationError);
    try {
        parse_presentation("[generators]\nx = 2\n[differential]\nx = q\n");
        FAIL("expected PresentationError");
    } catch (const PresentationError& err) {
        // the expression error position maps to the value's column
        CHECK(err.line == 4);
        CHECK(err.column == 5);
    }
}

TEST_CASE("a file cannot carry both a differential and relations") {
    std::string text =
        "[generators]\na = 1\n[differential]\na = 0\n[relations]\nr1 = "
        "[a,a]\n";
    CHECK_THROWS_AS(parse_presentation(text), PresentationError);
}

TEST_CASE("relations must be homogeneous") {
    std::string text =
        "[generators]\na = 1\nb = 3\n[relations]\nr1 = [a,a] + b\n";
    try {
        parse_presentation(text);
        FAIL("expected PresentationError");
    } catch (const PresentationError& err) {
        CHECK(std::string(err.what()).find("homogeneous") != std::string::npos);
    }
}

TEST_CASE("malformed structure is reported with positions") {
    CHECK_THROWS_AS(parse_presentation("a = 1\n"), PresentationError);
    CHECK_THROWS_AS(parse_presentation("[generators\na = 1\n"),
                    PresentationError);
    CHECK_THROWS_AS(parse_presentation("[widgets]\na = 1\n"),
                    PresentationError);
    CHECK_THROWS_AS(parse_presentation("[generators]\na 1\n"),
                    PresentationError);
    CHECK_THROWS_AS(parse_presentation("[generators]\na = 1\na = 2\n"),
                    PresentationError);
    CHECK_THROWS_AS(
        parse_presentation(
            "[generators]\nx = 2\ny = 2\n[differential]\nx = 0\nx = 0\n"),
        PresentationError);
    CHECK_THROWS_AS(parse_presentation("[generators]\na = one\n"),
                    PresentationError);
    CHECK_THROWS_AS(
        parse_presentation("[generators]\na = 1\n[cutoffs]\nwidth = 3\n"),
        PresentationError);
    CHECK_THROWS_AS(
        parse_presentation("[generators]\na = 1\n[cutoffs]\ndegree = 0\n"),
        PresentationError);
    CHECK_THROWS_AS(parse_presentation("missing file content [generators]"),
                    PresentationError);
}

TEST_CASE("comments and blank lines are ignored") {
    std::string text =
        "# header comment\n\n[generators]  # trailing\na = 1  # one\n\n";
    ParsedPresentation p = parse_presentation(text);
    CHECK(p.ctx->generators().size() == 1);
}

TEST_CASE("cutoff precedence: override > file > default") {
    std::string with_file = "[generators]\na = 1\n[cutoffs]\ndegree = 5\n";
    std::string without = "[generators]\na = 1\n";
    CHECK(parse_presentation(with_file).degree_cutoff == 5);
    CHECK(parse_presentation(with_file, 3).degree_cutoff == 3);
    CHECK(parse_presentation(without).degree_cutoff == 8);
    CHECK(parse_presentation(without, 6).degree_cutoff == 6);
}

TEST_CASE("serialization round-trips to an equivalent presentation") {
    for (std::string name : {"ladder4.dgl", "sphere2.dgl", "disk4.dgl",
                             "wedge23.dgl", "odd-abelian.gl"}) {
        ParsedPresentation p = parse_presentation_file(kFixtureDir + "/" + name);
        std::string text = serialize_presentation(p);
        ParsedPresentation q = parse_presentation(text);
        CHECK(q.ctx->generators().size() == p.ctx->generators().size());
        for (int i = 0; i < p.ctx->generators().size(); ++i) {
            CHECK(q.ctx->generators().at(i).name ==
                  p.ctx->generators().at(i).name);
            CHECK(q.ctx->generators().at(i).degree ==
                  p.ctx->generators().at(i).degree);
            CHECK(q.ctx->to_string(q.dgl.differential_on(i)) ==
                  p.ctx->to_string(p.dgl.differential_on(i)));
        }
        CHECK(q.has_relations == p.has_relations);
        REQUIRE(q.relations.size() == p.relations.size());
        for (size_t i = 0; i < p.relations.size(); ++i)
            CHECK(q.ctx->to_string(q.relations[i].second) ==
                  p.ctx->to_string(p.relations[i].second));
        CHECK(q.file_degree_cutoff == p.file_degree_cutoff);
        CHECK(q.file_filtration_cutoff == p.file_filtration_cutoff);
        CHECK(q.file_simplicial_cutoff == p.file_simplicial_cutoff);
        // canonical form is a fixed point of re-serialization
        CHECK(serialize_presentation(q) == text);
    }
}

TEST_CASE("content digest matches the FNV-1a reference values") {
    CHECK(content_digest("") == "cbf29ce484222325");
    CHECK(content_digest("a") == "af63dc4c8601ec8c");
    CHECK(content_digest("foobar") == "85944171f73967e8");
    CHECK(content_digest("x") != content_digest("y"));
}

TEST_CASE("report rendering is deterministic and schema-versioned") {
    Report rep;
    rep.command = "homology";
    rep.input_digest = content_digest("input");
    rep.cutoffs = {{"degree", 6}, {"simplicial", 3}};
    rep.conventions = standard_conventions();
    rep.notes = {"cutoff-incomplete: example"};
    rep.payload_json = "{\"betti\": [1, 0, 2], \"ok\": true}";

    std::string j1 = rep.render_json();
    std::string j2 = rep.render_json();
    CHECK(j1 == j2);
    auto parsed = nlohmann::json::parse(j1);
    CHECK(parsed["schema"] == "dgla-report/1");
    CHECK(parsed["command"] == "homology");
    CHECK(parsed["cutoffs"]["degree"] == 6);
    CHECK(parsed["result"]["betti"][2] == 2);
    CHECK(parsed["conventions"].size() == 2);

    std::string t = rep.render_text();
    CHECK(t == rep.render_text());
    CHECK(t.find("schema: dgla-report/1") != std::string::npos);
    CHECK(t.find("degree: 6") != std::string::npos);
    CHECK(t.find("n0 = r + 1") != std::string::npos);
    CHECK(t.back() == '\n');
}

TEST_CASE("every report embeds both convention statements") {
    std::vector<std::string> c = standard_conventions();
    REQUIRE(c.size() == 2);
    CHECK(c[0].find("n0 = r + 1") != std::string::npos);
    CHECK(c[1].find("H^s_t") != std::string::npos);
}
