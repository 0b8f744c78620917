#pragma once

#include "ntri/ntriangle.hpp"

#include <sstream>

namespace ntri {

// Line-oriented, human-writable container for complexes, maps and diagrams.
// Matrices are written in row-major bracket form [a b; c d]; degrees are
// labelled explicitly. parse(serialize(d)) == d bit for bit: entities live
// in name-sorted maps and serialization is canonical.
//
//   ntri-doc 1
//   field 2
//   complex X {
//   dim 0 2
//   dim 1 1
//   d 0 [1 0; 1 1]
//   }
//   map u : X -> Y deg 0 {
//   at 0 [1 0]
//   }
//   diagram T 2 {
//   vertex 0 1 X
//   edge 0 1 2 u
//   }
//   dmap G : T -> S {
//   vertex 0 1 f
//   }
//   meta check lightning
struct DiagramDocument {
    int field = 2;
    std::map<std::string, ChainComplex> complexes;
    struct NamedMap {
        std::string src, tgt;
        int deg = 0;
        std::map<int, Mat> at; // parsed raw; realized against complexes
    };
    std::map<std::string, NamedMap> maps;
    struct NamedDiagram {
        int n = 2;
        std::map<VertexKey, std::string> vertex;
        std::map<EdgeKey, std::string> edge;
    };
    std::map<std::string, NamedDiagram> diagrams;
    struct NamedDmap {
        std::string src, tgt;
        std::map<VertexKey, std::string> vertex;
    };
    std::map<std::string, NamedDmap> dmaps;
    std::map<std::string, std::string> meta;

    const ChainComplex& complex(const std::string& name) const {
        auto it = complexes.find(name);
        if (it == complexes.end()) throw std::invalid_argument("unknown complex: " + name);
        return it->second;
    }

    // Realizes a named map as a GradedMap, checking shapes.
    GradedMap realize_map(const std::string& name) const {
        auto it = maps.find(name);
        if (it == maps.end()) throw std::invalid_argument("unknown map: " + name);
        const NamedMap& m = it->second;
        GradedMap g(complex(m.src), complex(m.tgt), m.deg);
        for (auto& [n, mat] : m.at) g.set(n, mat);
        return g;
    }

    // Realizes a named diagram, checking the shape bookkeeping; wavy edges
    // must reference maps into the shifted target.
    NTriangle realize_diagram(const std::string& name) const {
        auto it = diagrams.find(name);
        if (it == diagrams.end()) throw std::invalid_argument("unknown diagram: " + name);
        const NamedDiagram& d = it->second;
        NTriangle t(d.n, field);
        for (auto& v : t.shape().vertices()) {
            auto vi = d.vertex.find(v);
            if (vi == d.vertex.end())
                throw std::invalid_argument("diagram " + name + ": missing object at " + v.str());
            t.set_obj(v, complex(vi->second));
        }
        for (auto& e : t.shape().edges()) {
            auto ei = d.edge.find(e);
            if (ei == d.edge.end())
                throw std::invalid_argument("diagram " + name + ": missing map on " + e.str());
            t.set_edge(e, realize_map(ei->second));
        }
        return t;
    }

    TriangleMap realize_dmap(const std::string& name) const {
        auto it = dmaps.find(name);
        if (it == dmaps.end()) throw std::invalid_argument("unknown dmap: " + name);
        const NamedDmap& m = it->second;
        NTriangle src = realize_diagram(m.src), tgt = realize_diagram(m.tgt);
        std::map<VertexKey, ChainMap> comp;
        for (auto& [v, mapname] : m.vertex) comp.emplace(v, realize_map(mapname));
        return make_triangle_map(src, tgt, std::move(comp));
    }

    // ---- ingestion helpers used by the CLI ----

    void put_complex(const std::string& name, const ChainComplex& c) {
        if (c.p() != field) throw std::invalid_argument("field mismatch storing " + name);
        complexes[name] = c;
    }

    void put_map(const std::string& name, const GradedMap& g, const std::string& src,
                 const std::string& tgt) {
        NamedMap m{src, tgt, g.deg(), {}};
        for (auto& [n, mat] : g.components()) m.at[n] = mat;
        maps[name] = std::move(m);
    }

    // Stores a map of diagrams whose endpoints were stored under the given
    // stems by put_diagram.
    void put_dmap(const std::string& name, const TriangleMap& m, const std::string& src_stem,
                  const std::string& tgt_stem) {
        NamedDmap dm{src_stem, tgt_stem, {}};
        for (auto& [v, c] : m.comp) {
            std::string suffix = std::to_string(v.i) + std::to_string(v.j);
            std::string mname = name + "_c" + suffix;
            put_map(mname, c, src_stem + "_o" + suffix, tgt_stem + "_o" + suffix);
            dm.vertex[v] = mname;
        }
        dmaps[name] = std::move(dm);
    }

    // Stores a whole diagram, inventing names prefixed by `stem`.
    void put_diagram(const std::string& stem, const NTriangle& t) {
        NamedDiagram d;
        d.n = t.n();
        for (auto& [v, c] : t.objects()) {
            std::string cname = stem + "_o" + std::to_string(v.i) + std::to_string(v.j);
            put_complex(cname, c);
            d.vertex[v] = cname;
        }
        for (auto& [e, f] : t.edges()) {
            std::string mname = stem + "_e" + std::to_string(e.i) + std::to_string(e.j) +
                                std::to_string(e.k);
            std::string sname = d.vertex.at(e.source());
            std::string tname = d.vertex.at(e.target());
            if (e.shift()) {
                tname = stem + "_o" + std::to_string(e.target().i) +
                        std::to_string(e.target().j) + "s1";
                if (!complexes.count(tname)) put_complex(tname, t.obj(e.target()).shift(1));
            }
            put_map(mname, f, sname, tname);
            d.edge[e] = mname;
        }
        diagrams[stem] = std::move(d);
    }
};

namespace docio {

inline std::string mat_to_text(const Mat& m) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << static_cast<int>(m.at(i, j));
        }
    }
    os << ']';
    return os.str();
}

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

// Parses "[a b; c d]" given the expected shape (shape checks happen on use).
inline Mat parse_matrix(const std::string& text, int p, int lineno) {
    std::string body = text;
    size_t l = body.find('['), r = body.rfind(']');
    if (l == std::string::npos || r == std::string::npos || r < l)
        throw ParseError(lineno, "matrix literal must be bracketed: " + text);
    body = body.substr(l + 1, r - l - 1);
    std::vector<std::vector<int>> rows;
    std::string rowtext;
    std::istringstream rs(body);
    while (std::getline(rs, rowtext, ';')) {
        std::istringstream es(rowtext);
        std::vector<int> row;
        long long v;
        while (es >> v) row.push_back(static_cast<int>(((v % p) + p) % p));
        rows.push_back(std::move(row));
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) return Mat(0, 0, p);
    size_t width = rows[0].size();
    for (auto& rw : rows)
        if (rw.size() != width) throw ParseError(lineno, "ragged matrix literal: " + text);
    if (width == 0) return Mat(static_cast<int>(rows.size()), 0, p);
    return Mat::from_rows(rows, p);
}

} // namespace docio

inline std::string serialize_document(const DiagramDocument& d) {
    std::ostringstream os;
    os << "ntri-doc 1\n";
    os << "field " << d.field << "\n";
    for (auto& [k, v] : d.meta) os << "meta " << k << " " << v << "\n";
    for (auto& [name, c] : d.complexes) {
        os << "complex " << name << " {\n";
        for (auto& [n, dim] : c.dims()) os << "dim " << n << " " << dim << "\n";
        for (auto& [n, dim] : c.dims()) {
            (void)dim;
            if (c.dim(n + 1) > 0 && !c.diff(n).is_zero())
                os << "d " << n << " " << docio::mat_to_text(c.diff(n)) << "\n";
        }
        os << "}\n";
    }
    for (auto& [name, m] : d.maps) {
        os << "map " << name << " : " << m.src << " -> " << m.tgt << " deg " << m.deg << " {\n";
        for (auto& [n, mat] : m.at)
            if (!mat.is_zero()) os << "at " << n << " " << docio::mat_to_text(mat) << "\n";
        os << "}\n";
    }
    for (auto& [name, dg] : d.diagrams) {
        os << "diagram " << name << " " << dg.n << " {\n";
        for (auto& [v, cname] : dg.vertex)
            os << "vertex " << v.i << " " << v.j << " " << cname << "\n";
        for (auto& [e, mname] : dg.edge)
            os << "edge " << e.i << " " << e.j << " " << e.k << " " << mname << "\n";
        os << "}\n";
    }
    for (auto& [name, dm] : d.dmaps) {
        os << "dmap " << name << " : " << dm.src << " -> " << dm.tgt << " {\n";
        for (auto& [v, mname] : dm.vertex)
            os << "vertex " << v.i << " " << v.j << " " << mname << "\n";
        os << "}\n";
    }
    return os.str();
}

inline DiagramDocument parse_document(const std::string& text) {
    DiagramDocument doc;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;

    enum class Section { None, Complex, Map, Diagram, Dmap } section = Section::None;
    std::string current;
    // staged raw dims/diffs for shape-checked installation at section close
    std::map<int, int> dims;
    std::map<int, std::string> diffs;
    std::map<int, int> diff_lines;

    auto close_section = [&]() {
        if (section == Section::Complex) {
            ChainComplex c(doc.field);
            for (auto& [n, dim] : dims) c.set_dim(n, dim);
            for (auto& [n, mtext] : diffs) {
                Mat m = docio::parse_matrix(mtext, doc.field, diff_lines[n]);
                if (m.rows() != c.dim(n + 1) || m.cols() != c.dim(n))
                    throw docio::ParseError(diff_lines[n],
                                            "differential shape mismatch in complex " + current);
                c.set_diff(n, m);
            }
            auto v = c.validate();
            if (v)
                throw docio::ParseError(diff_lines.count(v->degree) ? diff_lines[v->degree] : lineno,
                                        "complex " + current + ": " + v->what);
            doc.complexes[current] = std::move(c);
            dims.clear();
            diffs.clear();
            diff_lines.clear();
        }
        section = Section::None;
    };

    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == '#') continue;
        if (!saw_header) {
            if (tok != "ntri-doc") throw docio::ParseError(lineno, "missing ntri-doc header");
            int version;
            if (!(ls >> version) || version != 1)
                throw docio::ParseError(lineno, "unsupported document version");
            saw_header = true;
            continue;
        }
        if (tok == "}") {
            close_section();
            continue;
        }
        switch (section) {
            case Section::None: {
                if (tok == "field") {
                    if (!(ls >> doc.field) || !is_prime(doc.field))
                        throw docio::ParseError(lineno, "field modulus must be a prime");
                } else if (tok == "meta") {
                    std::string k, rest;
                    ls >> k;
                    std::getline(ls, rest);
                    size_t start = rest.find_first_not_of(' ');
                    doc.meta[k] = start == std::string::npos ? "" : rest.substr(start);
                } else if (tok == "complex") {
                    std::string brace;
                    if (!(ls >> current >> brace) || brace != "{")
                        throw docio::ParseError(lineno, "expected: complex NAME {");
                    section = Section::Complex;
                } else if (tok == "map") {
                    DiagramDocument::NamedMap m;
                    std::string colon, arrow, degkw, brace;
                    if (!(ls >> current >> colon >> m.src >> arrow >> m.tgt >> degkw >> m.deg >>
                          brace) ||
                        colon != ":" || arrow != "->" || degkw != "deg" || brace != "{")
                        throw docio::ParseError(lineno, "expected: map NAME : SRC -> TGT deg D {");
                    doc.maps[current] = std::move(m);
                    section = Section::Map;
                } else if (tok == "diagram") {
                    DiagramDocument::NamedDiagram dg;
                    std::string brace;
                    if (!(ls >> current >> dg.n >> brace) || brace != "{" || dg.n < 1)
                        throw docio::ParseError(lineno, "expected: diagram NAME N {");
                    doc.diagrams[current] = std::move(dg);
                    section = Section::Diagram;
                } else if (tok == "dmap") {
                    DiagramDocument::NamedDmap dm;
                    std::string colon, arrow, brace;
                    if (!(ls >> current >> colon >> dm.src >> arrow >> dm.tgt >> brace) ||
                        colon != ":" || arrow != "->" || brace != "{")
                        throw docio::ParseError(lineno, "expected: dmap NAME : SRC -> TGT {");
                    doc.dmaps[current] = std::move(dm);
                    section = Section::Dmap;
                } else {
                    throw docio::ParseError(lineno, "unknown directive: " + tok);
                }
                break;
            }
            case Section::Complex: {
                if (tok == "dim") {
                    int n, dim;
                    if (!(ls >> n >> dim) || dim < 0)
                        throw docio::ParseError(lineno, "expected: dim DEG COUNT");
                    dims[n] = dim;
                } else if (tok == "d") {
                    int n;
                    std::string rest;
                    if (!(ls >> n)) throw docio::ParseError(lineno, "expected: d DEG [matrix]");
                    std::getline(ls, rest);
                    diffs[n] = rest;
                    diff_lines[n] = lineno;
                } else {
                    throw docio::ParseError(lineno, "unknown complex entry: " + tok);
                }
                break;
            }
            case Section::Map: {
                if (tok == "at") {
                    int n;
                    std::string rest;
                    if (!(ls >> n)) throw docio::ParseError(lineno, "expected: at DEG [matrix]");
                    std::getline(ls, rest);
                    Mat m = docio::parse_matrix(rest, doc.field, lineno);
                    if (!m.is_zero()) doc.maps[current].at[n] = std::move(m);
                } else {
                    throw docio::ParseError(lineno, "unknown map entry: " + tok);
                }
                break;
            }
            case Section::Diagram: {
                if (tok == "vertex") {
                    int i, j;
                    std::string name;
                    if (!(ls >> i >> j >> name))
                        throw docio::ParseError(lineno, "expected: vertex I J COMPLEX");
                    doc.diagrams[current].vertex.emplace(VertexKey(i, j), name);
                } else if (tok == "edge") {
                    int i, j, k;
                    std::string name;
                    if (!(ls >> i >> j >> k >> name))
                        throw docio::ParseError(lineno, "expected: edge I J K MAP");
                    doc.diagrams[current].edge.emplace(EdgeKey(i, j, k), name);
                } else {
                    throw docio::ParseError(lineno, "unknown diagram entry: " + tok);
                }
                break;
            }
            case Section::Dmap: {
                if (tok == "vertex") {
                    int i, j;
                    std::string name;
                    if (!(ls >> i >> j >> name))
                        throw docio::ParseError(lineno, "expected: vertex I J MAP");
                    doc.dmaps[current].vertex.emplace(VertexKey(i, j), name);
                } else {
                    throw docio::ParseError(lineno, "unknown dmap entry: " + tok);
                }
                break;
            }
        }
    }
    if (section != Section::None) throw docio::ParseError(lineno, "unterminated section");
    // zero maps between stored complexes need no `at` lines, but shapes of
    // the ones given are validated on realization
    return doc;
}

} // namespace ntri
