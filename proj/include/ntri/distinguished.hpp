#pragma once

#include "ntri/ntriangle.hpp"

namespace ntri {

// ---------------------------------------------------------------------------
// verdicts and certificates
// ---------------------------------------------------------------------------

enum class Status { Yes, No, Undetermined };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Yes: return "yes";
        case Status::No: return "no";
        default: return "undetermined";
    }
}

// Bookkeeping map C[1] -> C of degree +1 with identity components; used to
// move between the two views of a homotopy a -> b' (degree -1) and the cone
// block entry a[1] -> b' (degree 0).
inline GradedMap unshift_one(const ChainComplex& c) {
    GradedMap f(c.shift(1), c, 1);
    for (auto& [n, d] : c.dims()) f.set(n - 1, Mat::identity(d, c.p()));
    return f;
}

// Distinguishedness certificate: an explicit isomorphism, component by
// component a homotopy equivalence with stored inverse witnesses, from the
// standard build on the triangle's own base to the triangle.
struct DistTriangle {
    NTriangle t;
    NTriangle standard;
    std::vector<ChainMap> base_maps; // base of the standard build
    TriangleMap iso;                 // standard -> t
    std::map<VertexKey, HtpyEquivWitness> inv;
    bool by_construction = false;

    const ChainMap& phi(const VertexKey& v) const { return iso.at(v); }
    const ChainMap& phi_inv(const VertexKey& v) const { return inv.at(v).g; }

    // Pure arithmetic: the iso commutes up to homotopy edgewise (witnesses
    // re-found are not needed; each component's inverse witness re-checks,
    // and the naturality squares are re-verified by multiplication).
    bool recheck(VerifyMode mode = VerifyMode::Homotopy) const {
        for (auto& [v, w] : inv)
            if (!w.recheck()) return false;
        return verify_map(iso, mode).pass();
    }
};

struct Verdict2 {
    Status status = Status::Undetermined;
    std::optional<DistTriangle> cert;
    std::optional<NoWitness> no;
    std::string note;
};

// Witness that a map of 2-triangles is distinguished, in the standard
// coordinates of its endpoint certificates:
//   hs = [[f[1],0],[k,g]] + iota' tau pi + (d s + s d),  d k + k d = g u - u' f
struct MapCert {
    GradedMap k;   // degree -1, a -> b'
    ChainMap tau;  // a[1] -> b'
    GradedMap s;   // degree -1, C(u) -> C(u')
    ChainMap hs;   // transported third component
    ChainMap block_const; // [[f[1],0],[0,g]]
    ChainMap iota_p;      // b' -> C(u')
    ChainMap pi_u;        // C(u) -> a[1]
    ChainMap gu_minus_uf; // g u - u' f

    bool recheck() const {
        if (homotopy_boundary(k) != gu_minus_uf) return false;
        if (!tau.is_chain()) return false;
        GradedMap kblk = k.compose(unshift_one(k.src()).compose(pi_u));
        ChainMap strike = iota_p.compose(tau).compose(pi_u);
        GradedMap lhs = hs.sub(block_const).sub(iota_p.compose(kblk)).sub(strike);
        return lhs == homotopy_boundary(s);
    }
};

struct VerdictMap {
    Status status = Status::Undetermined;
    std::optional<MapCert> cert;
    std::optional<NoWitness> no;
    std::string note;
};

// ---------------------------------------------------------------------------
// the standard builder
// ---------------------------------------------------------------------------

// Standard n-triangle on a composable base b_1 -> b_2 -> ... -> b_n: the
// vertex a_{i,j} (i >= 1) is the cone on the composite b_i -> b_j, rows are
// diag(1, v) blocks, columns diag(v[1], 1) blocks, wavy edges are
// projection-then-inclusion. Verifies strictly by construction.
struct StandardBuild {
    NTriangle t;
    std::vector<ChainComplex> objs; // b_1..b_n
    std::vector<ChainMap> maps;     // u_1..u_{n-1}

    // composite b_i -> b_j, 1-based, i <= j
    ChainMap composite(int i, int j) const {
        ChainMap c = ChainMap::identity(objs[static_cast<size_t>(i) - 1]);
        for (int t2 = i; t2 < j; ++t2) c = maps[static_cast<size_t>(t2) - 1].compose(c);
        return c;
    }

    DistTriangle cert() const {
        DistTriangle d;
        d.t = t;
        d.standard = t;
        d.base_maps = maps;
        std::map<VertexKey, ChainMap> comp;
        for (auto& [v, c] : t.objects()) {
            comp.emplace(v, ChainMap::identity(c));
            HtpyEquivWitness w{ChainMap::identity(c), ChainMap::identity(c),
                               GradedMap::zero(c, c, -1), GradedMap::zero(c, c, -1)};
            d.inv.emplace(v, w);
        }
        d.iso = make_triangle_map(t, t, std::move(comp));
        d.by_construction = true;
        return d;
    }
};

inline StandardBuild build_standard(const std::vector<ChainMap>& base) {
    if (base.empty()) throw std::invalid_argument("build_standard: empty base");
    int n = static_cast<int>(base.size()) + 1;
    for (size_t i = 0; i + 1 < base.size(); ++i)
        if (base[i].tgt() != base[i + 1].src())
            throw std::invalid_argument("build_standard: base maps not composable");
    StandardBuild sb;
    sb.objs.push_back(base[0].src());
    for (auto& u : base) sb.objs.push_back(u.tgt());
    sb.maps = base;

    int p = base[0].p();
    NTriangle t(n, p);
    // composites and cones
    std::map<std::pair<int, int>, ChainMap> comp;
    std::map<std::pair<int, int>, Cone> cones;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) comp[{i, j}] = sb.composite(i, j);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) cones[{i, j}] = mapping_cone(comp[{i, j}]);

    for (int j = 1; j <= n; ++j) t.set_obj(VertexKey(0, j), sb.objs[static_cast<size_t>(j) - 1]);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) t.set_obj(VertexKey(i, j), cones[{i, j}].c);

    for (auto& e : t.shape().edges()) {
        if (e.i == 0) {
            // base edge b_j -> b_k
            t.set_edge(e, comp[{e.j, e.k}]);
        } else if (e.i < e.j) {
            // row edge C(c_ij) -> C(c_ik): diag(1, c_jk)
            const Cone& src = cones[{e.i, e.j}];
            const Cone& dst = cones[{e.i, e.k}];
            ChainMap id_bi = ChainMap::identity(sb.objs[static_cast<size_t>(e.i) - 1]);
            GradedMap zero_k(comp[{e.i, e.j}].src(), comp[{e.i, e.k}].tgt(), -1);
            t.set_edge(e, cone_block(comp[{e.i, e.j}], comp[{e.i, e.k}], id_bi, comp[{e.j, e.k}],
                                     zero_k, src, dst));
        } else if (e.k < e.i) {
            // column edge: j < k < i, from {j,i} to {k,i}
            if (e.j == 0) {
                t.set_edge(e, cones[{e.k, e.i}].iota);
            } else {
                const Cone& src = cones[{e.j, e.i}];
                const Cone& dst = cones[{e.k, e.i}];
                ChainMap id_bi = ChainMap::identity(sb.objs[static_cast<size_t>(e.i) - 1]);
                GradedMap zero_k(comp[{e.j, e.i}].src(), comp[{e.k, e.i}].tgt(), -1);
                t.set_edge(e, cone_block(comp[{e.j, e.i}], comp[{e.k, e.i}],
                                         comp[{e.j, e.k}], id_bi, zero_k, src, dst));
            }
        } else {
            // wavy edge: j < i < k, from {i,k} to {j,i}
            if (e.j == 0) {
                t.set_edge(e, cones[{e.i, e.k}].pi);
            } else {
                t.set_edge(e, cones[{e.j, e.i}].iota.shift(1).compose(cones[{e.i, e.k}].pi));
            }
        }
    }
    sb.t = t;
    return sb;
}

inline StandardBuild standard_2triangle(const ChainMap& u) { return build_standard({u}); }

// ---------------------------------------------------------------------------
// decider: distinguished 2-triangles
// ---------------------------------------------------------------------------

struct DeciderOptions {
    int budget = 64;
    uint64_t seed = 0x5eed;
};

// Decides whether a 2-triangle is isomorphic to the standard triangle on its
// own base map: solves for phi : C(u) -> c with phi iota ~ v and w phi ~ pi
// (one combined linear system), then certifies phi as a homotopy equivalence.
// Yes and No are certified; Undetermined only occurs when completions exist
// but none of the sampled ones is an equivalence.
inline Verdict2 check_distinguished_2(const NTriangle& tri, DeciderOptions opt = {}) {
    if (tri.n() != 2) throw std::invalid_argument("check_distinguished_2: not a 2-triangle");
    const ChainComplex& a = tri_a(tri);
    const ChainComplex& b = tri_b(tri);
    const ChainComplex& c = tri_c(tri);
    const ChainMap& u = tri_u(tri);
    const ChainMap& v = tri_v(tri);
    const ChainMap& w = tri_w(tri);

    StandardBuild sb = standard_2triangle(u);
    Cone cone = mapping_cone(u);

    LinSys sys(tri.p());
    int phi = sys.add_unknown(cone.c, c, 0);
    int hv = sys.add_unknown(b, c, -1);
    int hw = sys.add_unknown(cone.c, a.shift(1), -1);
    GradedMap d_cone = GradedMap::diff_map(cone.c);
    GradedMap d_c = GradedMap::diff_map(c);
    GradedMap d_b = GradedMap::diff_map(b);
    GradedMap d_a1 = GradedMap::diff_map(a.shift(1));
    // chain condition on phi
    sys.add_equation({LinSys::Term{phi, d_c, std::nullopt, 1},
                      LinSys::Term{phi, std::nullopt, d_cone, -1}},
                     GradedMap::zero(cone.c, c, 1));
    // phi iota - (d hv + hv d) = v
    sys.add_equation({LinSys::Term{phi, std::nullopt, cone.iota, 1},
                      LinSys::Term{hv, d_c, std::nullopt, -1},
                      LinSys::Term{hv, std::nullopt, d_b, -1}},
                     v);
    // w phi - (d hw + hw d) = pi
    sys.add_equation({LinSys::Term{phi, w, std::nullopt, 1},
                      LinSys::Term{hw, d_a1, std::nullopt, -1},
                      LinSys::Term{hw, std::nullopt, d_cone, -1}},
                     cone.pi);

    auto out = sys.solve();
    Verdict2 verdict;
    if (!out.ok) {
        verdict.status = Status::No;
        verdict.no = out.no;
        verdict.note = "no homotopy-commuting completion C(u) -> c exists";
        return verdict;
    }
    for (int attempt = 0; attempt <= opt.budget; ++attempt) {
        LinSys::Solution sol =
            attempt == 0 ? out.particular : out.sample(opt.seed + static_cast<uint64_t>(attempt));
        ChainMap cand = sol[phi];
        auto eq = is_homotopy_equivalence(cand);
        if (!eq) continue;
        DistTriangle cert;
        cert.t = tri;
        cert.standard = sb.t;
        cert.base_maps = sb.maps;
        std::map<VertexKey, ChainMap> comps;
        comps.emplace(VertexKey(0, 1), ChainMap::identity(a));
        comps.emplace(VertexKey(0, 2), ChainMap::identity(b));
        comps.emplace(VertexKey(1, 2), cand);
        cert.iso = make_triangle_map(sb.t, tri, std::move(comps));
        cert.inv.emplace(VertexKey(0, 1),
                         HtpyEquivWitness{ChainMap::identity(a), ChainMap::identity(a),
                                          GradedMap::zero(a, a, -1), GradedMap::zero(a, a, -1)});
        cert.inv.emplace(VertexKey(0, 2),
                         HtpyEquivWitness{ChainMap::identity(b), ChainMap::identity(b),
                                          GradedMap::zero(b, b, -1), GradedMap::zero(b, b, -1)});
        cert.inv.emplace(VertexKey(1, 2), *eq);
        verdict.status = Status::Yes;
        verdict.cert = std::move(cert);
        if (attempt > 0)
            verdict.note = "equivalence found at sample " + std::to_string(attempt);
        return verdict;
    }
    verdict.status = Status::Undetermined;
    verdict.note = "completions exist but no sampled one is a homotopy equivalence (budget " +
                   std::to_string(opt.budget) + ")";
    return verdict;
}

// ---------------------------------------------------------------------------
// decider: distinguished maps of 2-triangles
// ---------------------------------------------------------------------------

// Transports G to standard coordinates through the endpoint certificates and
// decides solvability of
//   hs = [[f[1],0],[k,g]] + iota' tau pi + (d s + s d)
// with side condition d k + k d = g u - u' f, all in one linear system.
inline VerdictMap check_distinguished_map_2(const TriangleMap& G, const DistTriangle& cs,
                                            const DistTriangle& ct) {
    if (G.src.n() != 2) throw std::invalid_argument("check_distinguished_map_2: not 2-triangles");
    if (cs.t != G.src || ct.t != G.tgt)
        throw std::invalid_argument("certificates do not match the map endpoints");
    const ChainComplex& a = tri_a(G.src);
    const ChainComplex& ap = tri_a(G.tgt);
    const ChainComplex& b = tri_b(G.src);
    const ChainComplex& bp = tri_b(G.tgt);
    const ChainMap& u = tri_u(G.src);
    const ChainMap& up = tri_u(G.tgt);
    const ChainMap& f = G.at(VertexKey(0, 1));
    const ChainMap& g = G.at(VertexKey(0, 2));
    const ChainMap& h = G.at(VertexKey(1, 2));

    Cone cu = mapping_cone(u);
    Cone cup = mapping_cone(up);
    ChainMap hs = ct.phi_inv(VertexKey(1, 2)).compose(h).compose(cs.phi(VertexKey(1, 2)));

    // constant diagonal block [[f[1],0],[0,g]]
    ChainMap D(cu.c, cup.c);
    {
        int p = G.src.p();
        int lo = std::min(cu.c.lo(), cup.c.lo()), hi = std::max(cu.c.hi(), cup.c.hi());
        for (int n = lo; n <= hi; ++n) {
            if (cu.c.dim(n) == 0 || cup.c.dim(n) == 0) continue;
            D.set(n, Mat::block({{f.at(n + 1), Mat(ap.dim(n + 1), b.dim(n), p)},
                                 {Mat(bp.dim(n), a.dim(n + 1), p), g.at(n)}}));
        }
    }

    LinSys sys(G.src.p());
    int k = sys.add_unknown(a, bp, -1);
    int tau = sys.add_unknown(a.shift(1), bp, 0);
    int s = sys.add_unknown(cu.c, cup.c, -1);
    GradedMap d_a = GradedMap::diff_map(a);
    GradedMap d_bp = GradedMap::diff_map(bp);
    GradedMap d_cu = GradedMap::diff_map(cu.c);
    GradedMap d_cup = GradedMap::diff_map(cup.c);
    GradedMap up_pi = unshift_one(a).compose(cu.pi); // C(u) -> a, degree +1

    // E1: iota'(k-block) pi + iota' tau pi + d s + s d = hs - D
    sys.add_equation({LinSys::Term{k, cup.iota, up_pi, 1},
                      LinSys::Term{tau, cup.iota, cu.pi, 1},
                      LinSys::Term{s, d_cup, std::nullopt, 1},
                      LinSys::Term{s, std::nullopt, d_cu, 1}},
                     hs.sub(D));
    // E2: d k + k d = g u - u' f
    sys.add_equation({LinSys::Term{k, d_bp, std::nullopt, 1},
                      LinSys::Term{k, std::nullopt, d_a, 1}},
                     g.compose(u).sub(up.compose(f)));

    auto out = sys.solve();
    VerdictMap verdict;
    if (!out.ok) {
        verdict.status = Status::No;
        verdict.no = out.no;
        verdict.note = "no homotopy-type presentation exists in standard coordinates";
        return verdict;
    }
    MapCert cert;
    cert.k = out.particular[k];
    cert.tau = out.particular[tau];
    cert.s = out.particular[s];
    cert.hs = hs;
    cert.block_const = D;
    cert.iota_p = cup.iota;
    cert.pi_u = cu.pi;
    cert.gu_minus_uf = g.compose(u).sub(up.compose(f));
    verdict.status = Status::Yes;
    verdict.cert = std::move(cert);
    return verdict;
}

// Convenience: decide a map after deciding both endpoints.
inline VerdictMap check_map_full(const TriangleMap& G, DeciderOptions opt = {}) {
    Verdict2 vs = check_distinguished_2(G.src, opt);
    Verdict2 vt = check_distinguished_2(G.tgt, opt);
    VerdictMap out;
    if (vs.status != Status::Yes || vt.status != Status::Yes) {
        out.status = vs.status == Status::No || vt.status == Status::No ? Status::No
                                                                       : Status::Undetermined;
        out.note = "endpoint triangle not certified distinguished";
        return out;
    }
    return check_distinguished_map_2(G, *vs.cert, *vt.cert);
}

// ---------------------------------------------------------------------------
// lightning strikes
// ---------------------------------------------------------------------------

struct Lightning {
    ChainMap tau; // codom(w) -> dom(v'), a chain map
    GradedMap s;  // homotopy absorbing the remainder
};

// Solves v' tau w + (d s + s d) = target with tau a chain map.
inline std::optional<Lightning> solve_lightning(const ChainMap& vprime, const ChainMap& w,
                                                const ChainMap& target) {
    LinSys sys(vprime.p());
    int tau = sys.add_unknown(w.tgt(), vprime.src(), 0);
    int s = sys.add_unknown(target.src(), target.tgt(), -1);
    GradedMap d_src = GradedMap::diff_map(w.tgt());
    GradedMap d_tgt = GradedMap::diff_map(vprime.src());
    sys.add_equation({LinSys::Term{tau, vprime, w, 1},
                      LinSys::Term{s, GradedMap::diff_map(target.tgt()), std::nullopt, 1},
                      LinSys::Term{s, std::nullopt, GradedMap::diff_map(target.src()), 1}},
                     target);
    sys.add_equation({LinSys::Term{tau, d_tgt, std::nullopt, 1},
                      LinSys::Term{tau, std::nullopt, d_src, -1}},
                     GradedMap::zero(w.tgt(), vprime.src(), 1));
    auto out = sys.solve();
    if (!out.ok) return std::nullopt;
    return Lightning{out.particular[tau], out.particular[s]};
}

// h' - h = v' tau w + (d s + s d) for maps G, G' sharing endpoints and the
// first two components up to homotopy.
inline std::optional<Lightning> lightning_difference(const TriangleMap& G,
                                                     const TriangleMap& Gp) {
    if (G.src != Gp.src || G.tgt != Gp.tgt)
        throw std::invalid_argument("lightning_difference: endpoint mismatch");
    if (!homotopic(G.at(VertexKey(0, 1)), Gp.at(VertexKey(0, 1))) ||
        !homotopic(G.at(VertexKey(0, 2)), Gp.at(VertexKey(0, 2))))
        throw std::invalid_argument("lightning_difference: first two components differ");
    return solve_lightning(tri_v(G.tgt), tri_w(G.src),
                           Gp.at(VertexKey(1, 2)).sub(G.at(VertexKey(1, 2))));
}

// h -> h + v' tau w.
inline TriangleMap apply_lightning(const TriangleMap& G, const ChainMap& tau) {
    ChainMap strike = tri_v(G.tgt).compose(tau).compose(tri_w(G.src));
    std::map<VertexKey, ChainMap> comp = G.comp;
    comp.at(VertexKey(1, 2)) = G.at(VertexKey(1, 2)).add(strike);
    return make_triangle_map(G.src, G.tgt, std::move(comp));
}

// ---------------------------------------------------------------------------
// good maps and the mapping cone of a map of triangles
// ---------------------------------------------------------------------------

namespace detail {

inline ChainComplex sum2(const ChainComplex& x, const ChainComplex& y) { return x.direct_sum(y); }

// [[m00, m01], [m10, m11]] : x0 (+) x1 -> y0 (+) y1, all of equal degree.
inline GradedMap block2(const ChainComplex& y0, const ChainComplex& y1, const ChainComplex& x0,
                        const ChainComplex& x1, const GradedMap& m00, const GradedMap& m01,
                        const GradedMap& m10, const GradedMap& m11) {
    int deg = m00.deg();
    GradedMap out(x0.direct_sum(x1), y0.direct_sum(y1), deg);
    for (auto& [n, d] : out.src().dims()) {
        (void)d;
        out.set(n, Mat::block({{m00.at(n), m01.at(n)}, {m10.at(n), m11.at(n)}}));
    }
    return out;
}

} // namespace detail

// The 2-triangle a'(+)b -> b'(+)c -> c'(+)a[1] -> (a'(+)b)[1] with the three
// displayed block maps; a map is good when this triangle is distinguished.
inline NTriangle mapping_cone_of_map(const TriangleMap& G) {
    const ChainComplex& a = tri_a(G.src);
    const ChainComplex& b = tri_b(G.src);
    const ChainComplex& c = tri_c(G.src);
    const ChainComplex& ap = tri_a(G.tgt);
    const ChainComplex& bp = tri_b(G.tgt);
    const ChainComplex& cp = tri_c(G.tgt);
    const ChainMap& u = tri_u(G.src);
    const ChainMap& v = tri_v(G.src);
    const ChainMap& w = tri_w(G.src);
    const ChainMap& up = tri_u(G.tgt);
    const ChainMap& vp = tri_v(G.tgt);
    const ChainMap& wp = tri_w(G.tgt);
    const ChainMap& f = G.at(VertexKey(0, 1));
    const ChainMap& g = G.at(VertexKey(0, 2));
    const ChainMap& h = G.at(VertexKey(1, 2));

    ChainComplex X1 = ap.direct_sum(b), X2 = bp.direct_sum(c), X3 = cp.direct_sum(a.shift(1));
    GradedMap m1 = detail::block2(bp, c, ap, b, up, g, GradedMap::zero(ap, c), v.negate());
    GradedMap m2 = detail::block2(cp, a.shift(1), bp, c, vp, h, GradedMap::zero(bp, a.shift(1)),
                                  w.negate());
    GradedMap m3 = detail::block2(ap.shift(1), b.shift(1), cp, a.shift(1), wp, f.shift(1),
                                  GradedMap::zero(cp, b.shift(1)), u.shift(1).negate());
    return make_2triangle(X1, X2, X3, m1, m2, m3);
}

inline Verdict2 is_good(const TriangleMap& G, DeciderOptions opt = {}) {
    return check_distinguished_2(mapping_cone_of_map(G), opt);
}

// ---------------------------------------------------------------------------
// Neeman's maps N(G), N'(G), N''(G)
// ---------------------------------------------------------------------------

namespace detail {

inline ChainComplex sum3(const ChainComplex& x, const ChainComplex& y, const ChainComplex& z) {
    return x.direct_sum(y).direct_sum(z);
}

// general block map between iterated direct sums (summed left to right)
inline GradedMap blockN(const std::vector<ChainComplex>& tgts,
                        const std::vector<ChainComplex>& srcs,
                        const std::vector<std::vector<GradedMap>>& parts, int deg) {
    ChainComplex S = srcs[0];
    for (size_t i = 1; i < srcs.size(); ++i) S = S.direct_sum(srcs[i]);
    ChainComplex T = tgts[0];
    for (size_t i = 1; i < tgts.size(); ++i) T = T.direct_sum(tgts[i]);
    GradedMap out(S, T, deg);
    for (auto& [n, d] : S.dims()) {
        (void)d;
        std::vector<std::vector<Mat>> grid;
        for (auto& row : parts) {
            std::vector<Mat> r;
            for (auto& m : row) r.push_back(m.at(n));
            grid.push_back(std::move(r));
        }
        out.set(n, Mat::block(grid));
    }
    return out;
}

} // namespace detail

// The common top triangle of the three Neeman maps:
//   a'(+)a -> a'(+)b(+)b' -> b'(+)c -> (a'(+)a)[1]
inline NTriangle neeman_top(const TriangleMap& G) {
    const ChainComplex& a = tri_a(G.src);
    const ChainComplex& b = tri_b(G.src);
    const ChainComplex& c = tri_c(G.src);
    const ChainComplex& ap = tri_a(G.tgt);
    const ChainComplex& bp = tri_b(G.tgt);
    const ChainMap& u = tri_u(G.src);
    const ChainMap& v = tri_v(G.src);
    const ChainMap& w = tri_w(G.src);
    int p = G.src.p();

    ChainComplex X1 = ap.direct_sum(a);
    ChainComplex X2 = detail::sum3(ap, b, bp);
    ChainComplex X3 = bp.direct_sum(c);
    auto Z = [&](const ChainComplex& t, const ChainComplex& s) { return GradedMap::zero(s, t); };
    (void)p;
    GradedMap m1 = detail::blockN({ap, b, bp}, {ap, a},
                                  {{GradedMap::identity(ap), Z(ap, a)},
                                   {Z(b, ap), u},
                                   {Z(bp, ap), Z(bp, a)}},
                                  0);
    GradedMap m2 = detail::blockN({bp, c}, {ap, b, bp},
                                  {{Z(bp, ap), Z(bp, b), GradedMap::identity(bp)},
                                   {Z(c, ap), v, Z(c, bp)}},
                                  0);
    GradedMap m3 = detail::blockN({ap.shift(1), a.shift(1)}, {bp, c},
                                  {{Z(ap.shift(1), bp), Z(ap.shift(1), c)},
                                   {Z(a.shift(1), bp), w}},
                                  0);
    return make_2triangle(X1, X2, X3, m1, m2, m3);
}

// N(G): bottom a'(+)a -> b' -> c'(+)a[1] -> (a'(+)a)[1], components
// (1, (u' g 1), [[v',h],[0,-w]]).
inline TriangleMap neeman_N(const TriangleMap& G) {
    const ChainComplex& a = tri_a(G.src);
    const ChainComplex& b = tri_b(G.src);
    const ChainComplex& c = tri_c(G.src);
    const ChainComplex& ap = tri_a(G.tgt);
    const ChainComplex& bp = tri_b(G.tgt);
    const ChainComplex& cp = tri_c(G.tgt);
    const ChainMap& u = tri_u(G.src);
    const ChainMap& w = tri_w(G.src);
    const ChainMap& up = tri_u(G.tgt);
    const ChainMap& vp = tri_v(G.tgt);
    const ChainMap& wp = tri_w(G.tgt);
    const ChainMap& f = G.at(VertexKey(0, 1));
    const ChainMap& g = G.at(VertexKey(0, 2));
    const ChainMap& h = G.at(VertexKey(1, 2));
    auto Z = [&](const ChainComplex& t, const ChainComplex& s) { return GradedMap::zero(s, t); };

    NTriangle top = neeman_top(G);
    ChainComplex Y1 = ap.direct_sum(a);
    ChainComplex Y2 = bp;
    ChainComplex Y3 = cp.direct_sum(a.shift(1));
    GradedMap b1 = detail::blockN({bp}, {ap, a}, {{up, g.compose(u)}}, 0);
    GradedMap b2 = detail::blockN({cp, a.shift(1)}, {bp}, {{vp}, {Z(a.shift(1), bp)}}, 0);
    GradedMap b3 = detail::blockN({ap.shift(1), a.shift(1)}, {cp, a.shift(1)},
                                  {{wp, f.shift(1)},
                                   {Z(a.shift(1), cp), GradedMap::identity(a.shift(1)).negate()}},
                                  0);
    NTriangle bot = make_2triangle(Y1, Y2, Y3, b1, b2, b3);

    ChainMap c1 = ChainMap::identity(Y1);
    ChainMap c2 = detail::blockN({bp}, {ap, b, bp}, {{up, g, GradedMap::identity(bp)}}, 0);
    ChainMap c3 = detail::blockN({cp, a.shift(1)}, {bp, c},
                                 {{vp, h}, {Z(a.shift(1), bp), w.negate()}}, 0);
    return make_triangle_map(top, bot,
                             {{VertexKey(0, 1), c1}, {VertexKey(0, 2), c2}, {VertexKey(1, 2), c3}});
}

// N'(G): same top, bottom a'(+)a -> b' -> c'(+)a[1] with (u' 0), [v';0],
// [[w',0],[0,1]]; first component [[1,f],[0,-1]].
inline TriangleMap neeman_Nprime(const TriangleMap& G) {
    const ChainComplex& a = tri_a(G.src);
    const ChainComplex& b = tri_b(G.src);
    const ChainComplex& c = tri_c(G.src);
    const ChainComplex& ap = tri_a(G.tgt);
    const ChainComplex& bp = tri_b(G.tgt);
    const ChainComplex& cp = tri_c(G.tgt);
    const ChainMap& w = tri_w(G.src);
    const ChainMap& up = tri_u(G.tgt);
    const ChainMap& vp = tri_v(G.tgt);
    const ChainMap& wp = tri_w(G.tgt);
    const ChainMap& f = G.at(VertexKey(0, 1));
    const ChainMap& g = G.at(VertexKey(0, 2));
    const ChainMap& h = G.at(VertexKey(1, 2));
    auto Z = [&](const ChainComplex& t, const ChainComplex& s) { return GradedMap::zero(s, t); };

    NTriangle top = neeman_top(G);
    ChainComplex Y1 = ap.direct_sum(a);
    ChainComplex Y3 = cp.direct_sum(a.shift(1));
    GradedMap b1 = detail::blockN({bp}, {ap, a}, {{up, Z(bp, a)}}, 0);
    GradedMap b2 = detail::blockN({cp, a.shift(1)}, {bp}, {{vp}, {Z(a.shift(1), bp)}}, 0);
    GradedMap b3 = detail::blockN({ap.shift(1), a.shift(1)}, {cp, a.shift(1)},
                                  {{wp, Z(ap.shift(1), a.shift(1))},
                                   {Z(a.shift(1), cp), GradedMap::identity(a.shift(1))}},
                                  0);
    NTriangle bot = make_2triangle(Y1, bp, Y3, b1, b2, b3);

    ChainMap c1 = detail::blockN({ap, a}, {ap, a},
                                 {{GradedMap::identity(ap), f},
                                  {Z(a, ap), GradedMap::identity(a).negate()}},
                                 0);
    ChainMap c2 = detail::blockN({bp}, {ap, b, bp}, {{up, g, GradedMap::identity(bp)}}, 0);
    ChainMap c3 = detail::blockN({cp, a.shift(1)}, {bp, c},
                                 {{vp, h}, {Z(a.shift(1), bp), w.negate()}}, 0);
    return make_triangle_map(top, bot,
                             {{VertexKey(0, 1), c1}, {VertexKey(0, 2), c2}, {VertexKey(1, 2), c3}});
}

// N''(G): same top, bottom is the target triangle itself; components
// ((1 f), (u' g 1), (v' h)).
inline TriangleMap neeman_Ndoubleprime(const TriangleMap& G) {
    const ChainComplex& a = tri_a(G.src);
    const ChainComplex& b = tri_b(G.src);
    const ChainComplex& c = tri_c(G.src);
    const ChainComplex& ap = tri_a(G.tgt);
    const ChainComplex& bp = tri_b(G.tgt);
    const ChainComplex& cp = tri_c(G.tgt);
    const ChainMap& up = tri_u(G.tgt);
    const ChainMap& f = G.at(VertexKey(0, 1));
    const ChainMap& g = G.at(VertexKey(0, 2));
    const ChainMap& h = G.at(VertexKey(1, 2));
    (void)up;

    NTriangle top = neeman_top(G);
    ChainMap c1 = detail::blockN({ap}, {ap, a}, {{GradedMap::identity(ap), f}}, 0);
    ChainMap c2 = detail::blockN({bp}, {ap, b, bp},
                                 {{tri_u(G.tgt), g, GradedMap::identity(bp)}}, 0);
    ChainMap c3 = detail::blockN({cp}, {bp, c}, {{tri_v(G.tgt), h}}, 0);
    return make_triangle_map(top, G.tgt,
                             {{VertexKey(0, 1), c1}, {VertexKey(0, 2), c2}, {VertexKey(1, 2), c3}});
}

} // namespace ntri
