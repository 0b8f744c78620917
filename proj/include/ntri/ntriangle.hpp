#pragma once

#include "ntri/homotopy.hpp"
#include "ntri/simplex.hpp"

#include <cassert>
#include <sstream>

namespace ntri {

enum class VerifyMode { Strict, Homotopy };

struct Condition {
    enum class Kind { EdgeChain, FaceTriangle, Square, MapSquare, MapChain } kind;
    std::string desc;
    enum class Status { Strict, UpToHomotopy, Fails } status;
    std::optional<GradedMap> witness; // homotopy with d h + h d = lhs - rhs

    bool rechecks(const GradedMap& lhs, const GradedMap& rhs) const {
        if (status == Status::Strict) return lhs == rhs;
        if (status == Status::UpToHomotopy)
            return witness && homotopy_boundary(*witness) == lhs.sub(rhs);
        return true;
    }
};

struct VerificationReport {
    std::vector<Condition> conditions;
    bool pass() const {
        for (auto& c : conditions)
            if (c.status == Condition::Status::Fails) return false;
        return true;
    }
    bool all_strict() const {
        for (auto& c : conditions)
            if (c.status != Condition::Status::Strict) return false;
        return true;
    }
    std::string first_failure() const {
        for (auto& c : conditions)
            if (c.status == Condition::Status::Fails) return c.desc;
        return "";
    }
};

// An R_n-diagram in the homotopy model: a chain complex per vertex a_{i,j}
// and a chain map per edge, where a wavy edge from P to Q is stored as a map
// obj(P) -> obj(Q)[1].
class NTriangle {
public:
    NTriangle() : n_(0), p_(2) {}
    NTriangle(int n, int p) : n_(n), p_(p) {
        if (n < 1) throw std::invalid_argument("n-triangle dimension must be >= 1");
    }

    int n() const { return n_; }
    int p() const { return p_; }
    RectifiedShape shape() const { return RectifiedShape{n_}; }

    const ChainComplex& obj(const VertexKey& v) const {
        auto it = obj_.find(v);
        if (it == obj_.end()) throw std::out_of_range("no object at " + v.str());
        return it->second;
    }
    void set_obj(const VertexKey& v, ChainComplex c) {
        check_vertex(v);
        if (c.p() != p_) throw std::invalid_argument("field mismatch at " + v.str());
        obj_[v] = std::move(c);
    }

    bool has_edge(const EdgeKey& e) const { return edge_.count(e) > 0; }
    const ChainMap& edge(const EdgeKey& e) const {
        auto it = edge_.find(e);
        if (it == edge_.end()) throw std::out_of_range("no map on " + e.str());
        return it->second;
    }
    // The map must run obj(source) -> obj(target)[shift].
    void set_edge(const EdgeKey& e, ChainMap f) {
        check_edge(e);
        ChainComplex want_src = obj(e.source());
        ChainComplex want_tgt = obj(e.target()).shift(e.shift());
        if (f.deg() != 0 || f.src() != want_src || f.tgt() != want_tgt)
            throw std::invalid_argument("edge map shape mismatch on " + e.str());
        edge_[e] = std::move(f);
    }

    bool complete() const {
        for (auto& v : shape().vertices())
            if (!obj_.count(v)) return false;
        for (auto& e : shape().edges())
            if (!edge_.count(e)) return false;
        return true;
    }

    bool operator==(const NTriangle& o) const {
        return n_ == o.n_ && p_ == o.p_ && obj_ == o.obj_ && edge_ == o.edge_;
    }
    bool operator!=(const NTriangle& o) const { return !(*this == o); }

    const std::map<VertexKey, ChainComplex>& objects() const { return obj_; }
    const std::map<EdgeKey, ChainMap>& edges() const { return edge_; }

private:
    void check_vertex(const VertexKey& v) const {
        if (v.i < 0 || v.j > n_) throw std::out_of_range("vertex " + v.str() + " outside R_n");
    }
    void check_edge(const EdgeKey& e) const {
        if (e.i < 0 || e.k > n_ || e.j < 0)
            throw std::out_of_range("edge " + e.str() + " outside R_n");
    }

    int n_, p_;
    std::map<VertexKey, ChainComplex> obj_;
    std::map<EdgeKey, ChainMap> edge_;
};

// ---- construction helpers for the classical 2-triangle a -> b -> c ~> ----

inline NTriangle make_2triangle(const ChainComplex& a, const ChainComplex& b,
                                const ChainComplex& c, const ChainMap& u, const ChainMap& v,
                                const ChainMap& w) {
    NTriangle t(2, a.p());
    t.set_obj(VertexKey(0, 1), a);
    t.set_obj(VertexKey(0, 2), b);
    t.set_obj(VertexKey(1, 2), c);
    t.set_edge(EdgeKey(0, 1, 2), u); // a -> b
    t.set_edge(EdgeKey(2, 0, 1), v); // b -> c
    t.set_edge(EdgeKey(1, 0, 2), w); // c ~> a, i.e. c -> a[1]
    return t;
}

inline const ChainComplex& tri_a(const NTriangle& t) { return t.obj(VertexKey(0, 1)); }
inline const ChainComplex& tri_b(const NTriangle& t) { return t.obj(VertexKey(0, 2)); }
inline const ChainComplex& tri_c(const NTriangle& t) { return t.obj(VertexKey(1, 2)); }
inline const ChainMap& tri_u(const NTriangle& t) { return t.edge(EdgeKey(0, 1, 2)); }
inline const ChainMap& tri_v(const NTriangle& t) { return t.edge(EdgeKey(2, 0, 1)); }
inline const ChainMap& tri_w(const NTriangle& t) { return t.edge(EdgeKey(1, 0, 2)); }

// ---- verification ----

namespace detail {

// Composes a directed path of diagram edges, shifting later maps by the
// accumulated shift degree. Returns the map obj(first) -> obj(last)[total].
inline ChainMap compose_path(const NTriangle& t, const std::vector<EdgeKey>& path) {
    ChainMap acc = t.edge(path[0]);
    int total = path[0].shift();
    for (size_t i = 1; i < path.size(); ++i) {
        ChainMap next = t.edge(path[i]);
        if (total != 0) next = next.shift(total);
        acc = next.compose(acc);
        total += path[i].shift();
    }
    return acc;
}

// Given the edge set of a small cycle (triangle or square), finds the unique
// source vertex (two outgoing edges) and the two directed paths to the sink.
// Directed cycles have no such source and impose no condition.
struct TwoPaths {
    std::vector<EdgeKey> left, right;
};

inline std::optional<TwoPaths> split_paths(const std::vector<EdgeKey>& cycle) {
    std::map<VertexKey, std::vector<EdgeKey>> out;
    for (auto& e : cycle) out[e.source()].push_back(e);
    VertexKey src(0, 1);
    bool found = false;
    for (auto& [v, es] : out)
        if (es.size() == 2) {
            src = v;
            found = true;
        }
    if (!found) return std::nullopt;
    TwoPaths tp;
    for (int side = 0; side < 2; ++side) {
        std::vector<EdgeKey>& path = side == 0 ? tp.left : tp.right;
        EdgeKey cur = out[src][side];
        path.push_back(cur);
        while (true) {
            auto it = out.find(cur.target());
            if (it == out.end() || it->second.size() != 1) break;
            cur = it->second[0];
            path.push_back(cur);
        }
    }
    return tp;
}

inline void check_two_paths(const NTriangle& t, const TwoPaths& tp, VerifyMode mode,
                            Condition::Kind kind, const std::string& desc,
                            VerificationReport& rep) {
    ChainMap lhs = compose_path(t, tp.left);
    ChainMap rhs = compose_path(t, tp.right);
    Condition c{kind, desc, Condition::Status::Fails, std::nullopt};
    if (lhs == rhs) {
        c.status = Condition::Status::Strict;
    } else if (mode == VerifyMode::Homotopy) {
        auto h = find_homotopy(lhs, rhs);
        if (h) {
            c.status = Condition::Status::UpToHomotopy;
            c.witness = *h;
        }
    }
    rep.conditions.push_back(std::move(c));
}

} // namespace detail

// Commutativity verification: every triangle of every simplex face and every
// source/sink square of the shape must commute (strictly, or up to a
// homotopy found by exact linear solve). The crossing squares are directed
// cycles -- the canonical cycle among them -- and impose no condition.
inline VerificationReport verify_diagram(const NTriangle& t,
                                         VerifyMode mode = VerifyMode::Homotopy) {
    if (!t.complete()) throw std::invalid_argument("diagram is missing objects or edge maps");
    VerificationReport rep;
    int n = t.n();
    for (auto& [e, f] : t.edges()) {
        Condition c{Condition::Kind::EdgeChain, "chain condition on " + e.str(),
                    Condition::Status::Strict, std::nullopt};
        if (!f.is_chain()) c.status = Condition::Status::Fails;
        rep.conditions.push_back(std::move(c));
    }
    for (int i = 0; i <= n; ++i) {
        auto emb = face_simplex(t.shape(), i);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int z = y + 1; z < n; ++z) {
                    std::vector<EdgeKey> tri = {emb.edge_image(x, y), emb.edge_image(y, z),
                                                emb.edge_image(x, z)};
                    auto tp = detail::split_paths(tri);
                    if (!tp) continue; // cannot happen for simplex faces
                    std::ostringstream d;
                    d << "face F_" << i << " triangle (" << x << "," << y << "," << z << ")";
                    detail::check_two_paths(t, *tp, mode, Condition::Kind::FaceTriangle, d.str(),
                                            rep);
                }
    }
    // squares: one per unordered split of a 4-subset into two disjoint pairs
    std::vector<int> idx(n + 1);
    for (int a = 0; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d) {
                    int quad[4] = {a, b, c, d};
                    // splits: {a,b}|{c,d}, {a,c}|{b,d}, {a,d}|{b,c}
                    int splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
                    for (auto& s : splits) {
                        int p0 = quad[s[0]], p1 = quad[s[1]], q0 = quad[s[2]], q1 = quad[s[3]];
                        std::vector<EdgeKey> sq = {EdgeKey(p0, q0, q1), EdgeKey(p1, q0, q1),
                                                   EdgeKey(q0, p0, p1), EdgeKey(q1, p0, p1)};
                        auto tp = detail::split_paths(sq);
                        if (!tp) continue; // crossing split: directed 4-cycle
                        std::ostringstream ds;
                        ds << "square {" << p0 << "," << p1 << "}x{" << q0 << "," << q1 << "}";
                        detail::check_two_paths(t, *tp, mode, Condition::Kind::Square, ds.str(),
                                                rep);
                    }
                }
    return rep;
}

// ---- rotations and shift ----

// Shift of a whole diagram: objects and maps shift, no signs.
inline NTriangle diagram_shift(const NTriangle& t, int k) {
    NTriangle out(t.n(), t.p());
    for (auto& [v, c] : t.objects()) out.set_obj(v, c.shift(k));
    for (auto& [e, f] : t.edges()) out.set_edge(e, f.shift(k));
    return out;
}

// Rotation tau: the 0th base of tau(T) is the face F_n of T. Position (x,y)
// pulls the object at (x-1, y-1) mod n+1; objects pulled without an index
// wrap acquire [1]; maps landing on wavy positions are negated.
inline NTriangle rotate_tau(const NTriangle& t) {
    int n = t.n(), N = n + 1;
    auto rho = [N](int x) { return (x + N - 1) % N; };
    auto vshift = [](const VertexKey& v) { return v.i >= 1 ? 1 : 0; };
    NTriangle out(n, t.p());
    for (auto& v : t.shape().vertices()) {
        VertexKey src(rho(v.i), rho(v.j));
        out.set_obj(v, t.obj(src).shift(vshift(v)));
    }
    for (auto& e : t.shape().edges()) {
        EdgeKey pulled(rho(e.i), rho(e.j), rho(e.k));
        assert(pulled.source() == VertexKey(rho(e.source().i), rho(e.source().j)));
        ChainMap m = t.edge(pulled);
        if (vshift(e.source())) m = m.shift(1);
        if (e.wavy()) m = m.negate();
        out.set_edge(e, m);
    }
    return out;
}

// Full rotation sigma: every object shifts by [1], wavy maps are negated.
inline NTriangle rotate_sigma(const NTriangle& t) {
    NTriangle out(t.n(), t.p());
    for (auto& [v, c] : t.objects()) out.set_obj(v, c.shift(1));
    for (auto& [e, f] : t.edges()) out.set_edge(e, e.wavy() ? f.shift(1).negate() : f.shift(1));
    return out;
}

// ---- faces and degeneracies ----

// A directed-simplex diagram (the image of a simplex face functor).
struct SimplexDiagram {
    DirectedSimplexShape shape;
    std::vector<ChainComplex> obj;                 // indexed by face coordinate
    std::map<std::pair<int, int>, ChainMap> edge;  // key (x<y); map source -> target[shift]
};

inline SimplexDiagram face_sigma(const NTriangle& t, int i) {
    auto emb = face_simplex(t.shape(), i);
    SimplexDiagram out;
    out.shape = emb.shape;
    for (int x = 0; x < t.n(); ++x) out.obj.push_back(t.obj(emb.vertex_image(x)));
    for (int x = 0; x < t.n(); ++x)
        for (int y = x + 1; y < t.n(); ++y) out.edge[{x, y}] = t.edge(emb.edge_image(x, y));
    return out;
}

inline NTriangle face_pi(const NTriangle& t, int i) {
    if (t.n() < 2) throw std::invalid_argument("face_pi needs dimension >= 2");
    auto emb = face_rectified(t.shape(), i);
    NTriangle out(t.n() - 1, t.p());
    for (auto& v : emb.shape.vertices()) out.set_obj(v, t.obj(emb.vertex_image(v)));
    for (auto& e : emb.shape.edges()) out.set_edge(e, t.edge(emb.edge_image(e)));
    return out;
}

// Degeneracy: duplicates index i (0 <= i <= n+1; i = n+1 coincides with
// i = n). Repeated objects are joined by identity maps and the collapsed
// pair {i, i+1} holds the zero complex; face_pi at i recovers the input.
inline NTriangle degenerate(const NTriangle& t, int i) {
    int n = t.n();
    if (i < 0 || i > n + 1) throw std::out_of_range("degeneracy index");
    int d = std::min(i, n);
    auto s = [d](int x) { return x <= d ? x : x - 1; };
    NTriangle out(n + 1, t.p());
    ChainComplex zero = ChainComplex::zero(t.p());
    for (auto& v : out.shape().vertices()) {
        if (s(v.i) == s(v.j)) out.set_obj(v, zero);
        else out.set_obj(v, t.obj(VertexKey(s(v.i), s(v.j))));
    }
    for (auto& e : out.shape().edges()) {
        VertexKey P = e.source(), Q = e.target();
        bool p_zero = s(P.i) == s(P.j), q_zero = s(Q.i) == s(Q.j);
        if (p_zero || q_zero) {
            out.set_edge(e, ChainMap::zero(out.obj(P), out.obj(Q).shift(e.shift())));
        } else if (s(e.j) == s(e.k)) {
            // duplicated pair: identity between equal objects (always plain)
            out.set_edge(e, ChainMap::identity(out.obj(P)));
        } else {
            out.set_edge(e, t.edge(EdgeKey(s(e.i), s(e.j), s(e.k))));
        }
    }
    return out;
}

inline NTriangle direct_sum_triangles(const NTriangle& t1, const NTriangle& t2) {
    if (t1.n() != t2.n()) throw std::invalid_argument("direct sum: dimension mismatch");
    NTriangle out(t1.n(), t1.p());
    for (auto& v : t1.shape().vertices()) out.set_obj(v, t1.obj(v).direct_sum(t2.obj(v)));
    for (auto& e : t1.shape().edges()) out.set_edge(e, t1.edge(e).direct_sum(t2.edge(e)));
    return out;
}

// ---- maps of diagrams ----

// A vertex-indexed collection of chain maps between two diagrams of equal
// dimension; naturality squares are required up to homotopy.
struct TriangleMap {
    NTriangle src, tgt;
    std::map<VertexKey, ChainMap> comp;

    const ChainMap& at(const VertexKey& v) const {
        auto it = comp.find(v);
        if (it == comp.end()) throw std::out_of_range("no component at " + v.str());
        return it->second;
    }
};

inline TriangleMap make_triangle_map(const NTriangle& src, const NTriangle& tgt,
                                     std::map<VertexKey, ChainMap> comp) {
    if (src.n() != tgt.n()) throw std::invalid_argument("triangle map: dimension mismatch");
    for (auto& v : src.shape().vertices()) {
        auto it = comp.find(v);
        if (it == comp.end()) throw std::invalid_argument("missing component at " + v.str());
        if (it->second.src() != src.obj(v) || it->second.tgt() != tgt.obj(v))
            throw std::invalid_argument("component shape mismatch at " + v.str());
    }
    return TriangleMap{src, tgt, std::move(comp)};
}

inline TriangleMap make_map2(const NTriangle& src, const NTriangle& tgt, const ChainMap& f,
                             const ChainMap& g, const ChainMap& h) {
    return make_triangle_map(src, tgt,
                             {{VertexKey(0, 1), f}, {VertexKey(0, 2), g}, {VertexKey(1, 2), h}});
}

inline VerificationReport verify_map(const TriangleMap& m,
                                     VerifyMode mode = VerifyMode::Homotopy) {
    VerificationReport rep;
    for (auto& [v, f] : m.comp) {
        Condition c{Condition::Kind::MapChain, "component chain condition at " + v.str(),
                    Condition::Status::Strict, std::nullopt};
        if (!f.is_chain()) c.status = Condition::Status::Fails;
        rep.conditions.push_back(std::move(c));
    }
    for (auto& e : m.src.shape().edges()) {
        VertexKey P = e.source(), Q = e.target();
        ChainMap lhs = m.tgt.edge(e).compose(m.at(P));
        ChainMap cq = m.at(Q);
        if (e.shift()) cq = cq.shift(e.shift());
        ChainMap rhs = cq.compose(m.src.edge(e));
        Condition c{Condition::Kind::MapSquare, "naturality square over " + e.str(),
                    Condition::Status::Fails, std::nullopt};
        if (lhs == rhs) c.status = Condition::Status::Strict;
        else if (mode == VerifyMode::Homotopy) {
            auto h = find_homotopy(lhs, rhs);
            if (h) {
                c.status = Condition::Status::UpToHomotopy;
                c.witness = *h;
            }
        }
        rep.conditions.push_back(std::move(c));
    }
    return rep;
}

inline TriangleMap face_pi_map(const TriangleMap& m, int i) {
    auto emb = face_rectified(m.src.shape(), i);
    std::map<VertexKey, ChainMap> comp;
    for (auto& v : emb.shape.vertices()) comp.emplace(v, m.at(emb.vertex_image(v)));
    return make_triangle_map(face_pi(m.src, i), face_pi(m.tgt, i), std::move(comp));
}

inline TriangleMap direct_sum_maps(const TriangleMap& m1, const TriangleMap& m2) {
    std::map<VertexKey, ChainMap> comp;
    for (auto& v : m1.src.shape().vertices())
        comp.emplace(v, m1.at(v).direct_sum(m2.at(v)));
    return make_triangle_map(direct_sum_triangles(m1.src, m2.src),
                             direct_sum_triangles(m1.tgt, m2.tgt), std::move(comp));
}

inline TriangleMap degenerate_map(const TriangleMap& m, int i) {
    NTriangle ds = degenerate(m.src, i), dt = degenerate(m.tgt, i);
    int n = m.src.n();
    int d = std::min(i, n);
    auto s = [d](int x) { return x <= d ? x : x - 1; };
    std::map<VertexKey, ChainMap> comp;
    for (auto& v : ds.shape().vertices()) {
        if (s(v.i) == s(v.j)) comp.emplace(v, ChainMap::zero(ds.obj(v), dt.obj(v)));
        else comp.emplace(v, m.at(VertexKey(s(v.i), s(v.j))));
    }
    return make_triangle_map(ds, dt, std::move(comp));
}

// Restriction of a map of diagrams to a 2-face (x < y < z): a map of the
// cyclic triangles on {x,y}, {x,z}, {y,z}.
inline NTriangle two_face(const NTriangle& t, int x, int y, int z) {
    return make_2triangle(t.obj(VertexKey(x, y)), t.obj(VertexKey(x, z)), t.obj(VertexKey(y, z)),
                          t.edge(EdgeKey(x, y, z)), t.edge(EdgeKey(z, x, y)),
                          t.edge(EdgeKey(y, x, z)));
}

inline TriangleMap two_face_map(const TriangleMap& m, int x, int y, int z) {
    return make_map2(two_face(m.src, x, y, z), two_face(m.tgt, x, y, z),
                     m.at(VertexKey(x, y)), m.at(VertexKey(x, z)), m.at(VertexKey(y, z)));
}

} // namespace ntri
