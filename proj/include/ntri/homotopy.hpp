#pragma once

#include "ntri/linsys.hpp"

#include <optional>

namespace ntri {

// Solves d_tgt h + h d_src = f - g for a degree -1 map h. The answer is
// exact and complete: this is a finite linear system over GF(p).
inline std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
    if (f.src() != g.src() || f.tgt() != g.tgt() || f.deg() != 0 || g.deg() != 0)
        throw std::invalid_argument("find_homotopy: maps are not parallel chain maps");
    LinSys sys(f.p());
    int h = sys.add_unknown(f.src(), f.tgt(), -1);
    GradedMap d_src = GradedMap::diff_map(f.src());
    GradedMap d_tgt = GradedMap::diff_map(f.tgt());
    sys.add_equation({LinSys::Term{h, d_tgt, std::nullopt, 1},
                      LinSys::Term{h, std::nullopt, d_src, 1}},
                     f.sub(g));
    auto out = sys.solve();
    if (!out.ok) return std::nullopt;
    return out.particular[h];
}

inline bool is_null_homotopic(const ChainMap& f) {
    return find_homotopy(f, ChainMap::zero(f.src(), f.tgt())).has_value();
}

inline bool homotopic(const ChainMap& f, const ChainMap& g) {
    return find_homotopy(f, g).has_value();
}

// Over a field, exactness at every degree is the rank condition
// rank d^{n-1} + rank d^n = dim C^n.
inline bool is_exact(const ChainComplex& c) {
    if (c.dims().empty()) return true;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        if (c.diff(n - 1).rank() + c.diff(n).rank() != c.dim(n)) return false;
    }
    return true;
}

// Contraction homotopy: d h + h d = id. Exists iff the complex is exact
// (field coefficients); the two deciders cross-check each other in tests.
inline std::optional<Homotopy> is_contractible(const ChainComplex& c) {
    ChainMap id = ChainMap::identity(c);
    return find_homotopy(id, ChainMap::zero(c, c));
}

// Mapping cone of u : X -> Y, with C(u)^n = X^{n+1} (+) Y^n and differential
// [[-d_X, 0], [u, d_Y]], together with the inclusion Y -> C(u) and the
// projection C(u) -> X[1]. The triple (u, iota, pi) is the standard triangle.
struct Cone {
    ChainComplex c;
    ChainMap iota; // Y -> C(u)
    ChainMap pi;   // C(u) -> X[1]
};

inline Cone mapping_cone(const ChainMap& u) {
    if (u.deg() != 0) throw std::invalid_argument("mapping_cone: not a degree-0 map");
    const ChainComplex& X = u.src();
    const ChainComplex& Y = u.tgt();
    int p = u.p();
    ChainComplex c(p);
    int a = std::min(X.lo() - 1, Y.lo()), b = std::max(X.hi() - 1, Y.hi());
    for (int n = a; n <= b; ++n) c.set_dim(n, X.dim(n + 1) + Y.dim(n));
    for (int n = a; n <= b; ++n) {
        if (c.dim(n) == 0 || c.dim(n + 1) == 0) continue;
        Mat d = Mat::block({{X.diff(n + 1).negate(), Mat(X.dim(n + 2), Y.dim(n), p)},
                            {u.at(n + 1), Y.diff(n)}});
        c.set_diff(n, d);
    }
    Cone out{c, ChainMap(Y, c), ChainMap(c, X.shift(1))};
    for (int n = a; n <= b; ++n) {
        int xs = X.dim(n + 1), ys = Y.dim(n);
        if (ys > 0)
            out.iota.set(n, Mat::block({{Mat(xs, ys, p)}, {Mat::identity(ys, p)}}));
        if (xs > 0 && c.dim(n) > 0)
            out.pi.set(n, Mat::block({{Mat::identity(xs, p), Mat(xs, ys, p)}}));
    }
    return out;
}

// Canonical cone-to-cone block maps. For a square psi x = x' phi (up to the
// homotopy k with d k + k d = psi x - x' phi), the block [[phi, 0], [k, psi]]
// is a chain map C(x) -> C(x').
inline ChainMap cone_block(const ChainMap& x, const ChainMap& xp, const ChainMap& phi,
                           const ChainMap& psi, const GradedMap& k, const Cone& cx,
                           const Cone& cxp) {
    int p = x.p();
    ChainMap out(cx.c, cxp.c);
    int a = std::min(cx.c.lo(), cxp.c.lo()), b = std::max(cx.c.hi(), cxp.c.hi());
    for (int n = a; n <= b; ++n) {
        if (cx.c.dim(n) == 0 || cxp.c.dim(n) == 0) continue;
        Mat m = Mat::block({{phi.at(n + 1), Mat(xp.src().dim(n + 1), x.tgt().dim(n), p)},
                            {k.at(n + 1), psi.at(n)}});
        out.set(n, m);
    }
    return out;
}

// Witness package for a homotopy equivalence f: an inverse g with homotopies
// s, t certifying f g ~ 1 and g f ~ 1. recheck() is multiplication only.
struct HtpyEquivWitness {
    ChainMap f, g;
    GradedMap s; // d s + s d = f g - id_tgt
    GradedMap t; // d t + t d = g f - id_src

    bool recheck() const {
        if (!f.is_chain() || !g.is_chain()) return false;
        ChainMap fg = f.compose(g);
        ChainMap gf = g.compose(f);
        GradedMap bs = homotopy_boundary(s);
        GradedMap bt = homotopy_boundary(t);
        return fg.sub(ChainMap::identity(f.tgt())) == bs &&
               gf.sub(ChainMap::identity(f.src())) == bt;
    }
};

// f is a homotopy equivalence iff its cone is exact; on success also solves
// for an explicit inverse and the two witnessing homotopies.
inline std::optional<HtpyEquivWitness> is_homotopy_equivalence(const ChainMap& f) {
    Cone cf = mapping_cone(f);
    if (!is_exact(cf.c)) return std::nullopt;
    LinSys sys(f.p());
    int g = sys.add_unknown(f.tgt(), f.src(), 0);
    int s = sys.add_unknown(f.tgt(), f.tgt(), -1);
    int t = sys.add_unknown(f.src(), f.src(), -1);
    GradedMap ds = GradedMap::diff_map(f.src());
    GradedMap dt = GradedMap::diff_map(f.tgt());
    // chain condition on g
    sys.add_equation({LinSys::Term{g, ds, std::nullopt, 1}, LinSys::Term{g, std::nullopt, dt, -1}},
                     GradedMap::zero(f.tgt(), f.src(), 1));
    // f g - (d s + s d) = id
    sys.add_equation({LinSys::Term{g, f, std::nullopt, 1},
                      LinSys::Term{s, dt, std::nullopt, -1},
                      LinSys::Term{s, std::nullopt, dt, -1}},
                     GradedMap::identity(f.tgt()));
    // g f - (d t + t d) = id
    sys.add_equation({LinSys::Term{g, std::nullopt, f, 1},
                      LinSys::Term{t, ds, std::nullopt, -1},
                      LinSys::Term{t, std::nullopt, ds, -1}},
                     GradedMap::identity(f.src()));
    auto out = sys.solve();
    if (!out.ok) return std::nullopt; // cannot happen when the cone is exact
    HtpyEquivWitness w{f, out.particular[g], out.particular[s], out.particular[t]};
    return w;
}

} // namespace ntri
