#include "doctest.h"
#include "ntri/document.hpp"
#include "ntri/generators.hpp"
#include "ntri/render.hpp"

using namespace ntri;

TEST_CASE("documents: empty and minimal") {
    DiagramDocument d = parse_document("ntri-doc 1\nfield 2\n");
    CHECK(d.field == 2);
    CHECK(d.complexes.empty());

    // a complex with no differentials loads and validates
    DiagramDocument d2 = parse_document(
        "ntri-doc 1\nfield 2\ncomplex X {\ndim 0 1\n}\n");
    CHECK(d2.complex("X").dim(0) == 1);
}

TEST_CASE("documents: d^2 != 0 is rejected with the offending line") {
    std::string text =
        "ntri-doc 1\nfield 2\n"
        "complex X {\n"
        "dim 0 1\n"
        "dim 1 1\n"
        "dim 2 1\n"
        "d 0 [1]\n"
        "d 1 [1]\n"
        "}\n";
    CHECK_THROWS_AS(parse_document(text), docio::ParseError);
    try {
        parse_document(text);
    } catch (const docio::ParseError& e) {
        CHECK(e.line == 7);
    }
}

TEST_CASE("documents: parse errors carry positions") {
    CHECK_THROWS_AS(parse_document("field 2\n"), docio::ParseError);
    CHECK_THROWS_AS(parse_document("ntri-doc 1\nfield 4\n"), docio::ParseError);
    CHECK_THROWS_AS(parse_document("ntri-doc 1\nbogus x\n"), docio::ParseError);
    CHECK_THROWS_AS(parse_document("ntri-doc 1\ncomplex X {\ndim 0 1\n"), docio::ParseError);
    CHECK_THROWS_AS(
        parse_document("ntri-doc 1\ncomplex X {\ndim 0 2\ndim 1 1\nd 0 [1 0; 0 1]\n}\n"),
        docio::ParseError);
}

TEST_CASE("documents: round trip is bit-exact") {
    for (int p : {2, 3}) {
        Rng rng(2024 + static_cast<uint64_t>(p));
        DiagramDocument doc;
        doc.field = p;
        NTriangle t = random_distinguished_2tri(p, rng.next());
        doc.put_diagram("T", t);
        doc.meta["check"] = "rotation";
        std::string text = serialize_document(doc);
        DiagramDocument back = parse_document(text);
        CHECK(serialize_document(back) == text);
        // and the realized diagram is the one we stored
        CHECK(back.realize_diagram("T") == t);

        // a second round trip through a realized dmap
        RandomMap2 rm = random_distinguished_map2(p, rng.next());
        DiagramDocument doc2;
        doc2.field = p;
        doc2.put_diagram("src", rm.map.src);
        doc2.put_diagram("tgt", rm.map.tgt);
        doc2.put_dmap("G", rm.map, "src", "tgt");
        std::string text2 = serialize_document(doc2);
        DiagramDocument back2 = parse_document(text2);
        CHECK(serialize_document(back2) == text2);
        TriangleMap g = back2.realize_dmap("G");
        CHECK(g.src == rm.map.src);
        CHECK(g.at(VertexKey(1, 2)) == rm.map.at(VertexKey(1, 2)));
    }
}

TEST_CASE("documents: missing references are structural errors") {
    std::string text =
        "ntri-doc 1\nfield 2\n"
        "complex X {\ndim 0 1\n}\n"
        "diagram T 2 {\nvertex 0 1 X\nvertex 0 2 X\nvertex 1 2 X\nedge 0 1 2 nope\n}\n";
    DiagramDocument d = parse_document(text);
    CHECK_THROWS_AS(d.realize_diagram("T"), std::invalid_argument);
}

TEST_CASE("render: text and dot") {
    std::string txt = render_balmer_text(2);
    CHECK(txt.find("a01") != std::string::npos);
    CHECK(txt.find("a12") != std::string::npos);
    CHECK(txt.find("[1]") != std::string::npos);

    std::string dot = render_balmer_dot(2);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("label=\"[1]\"") != std::string::npos);
    // single node for the degenerate shape
    std::string one = render_balmer_dot(1);
    CHECK(one.find("a0_1") != std::string::npos);
    CHECK(one.find("->") == std::string::npos);

    // 3-row grid for R_3
    std::string t3 = render_balmer_text(3);
    CHECK(t3.find("a23") != std::string::npos);
}
