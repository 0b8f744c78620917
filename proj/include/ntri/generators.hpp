#pragma once

#include "ntri/builders.hpp"

namespace ntri {

// splitmix64; all randomness in the library flows through explicit seeds so
// every run is reproducible bit for bit.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int uniform(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }
    Rng fork(uint64_t salt) { return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x1234567)); }
};

inline Mat random_matrix(Rng& rng, int rows, int cols, int p) {
    Mat m(rows, cols, p);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = static_cast<uint8_t>(rng.uniform(p));
    return m;
}

// L U P with unit-triangular random factors: always invertible.
inline Mat random_invertible(Rng& rng, int n, int p) {
    Mat l = Mat::identity(n, p), u = Mat::identity(n, p), perm(n, n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) l.at(i, j) = static_cast<uint8_t>(rng.uniform(p));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u.at(i, j) = static_cast<uint8_t>(rng.uniform(p));
    std::vector<int> sigma(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) sigma[static_cast<size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) std::swap(sigma[static_cast<size_t>(i)],
                                              sigma[static_cast<size_t>(rng.uniform(i + 1))]);
    for (int i = 0; i < n; ++i) perm.at(i, sigma[static_cast<size_t>(i)]) = 1;
    return l.mul(u).mul(perm);
}

struct GenOptions {
    int max_dim = 3;
    int lo = -3, hi = 3;
};

// Random bounded complex with d^2 = 0 guaranteed by construction: a direct
// sum of point atoms and interval atoms (k -> k in adjacent degrees), then a
// random change of basis in every degree.
inline ChainComplex random_complex(int p, uint64_t seed, GenOptions opt = {}) {
    Rng rng(seed ^ 0xc0ffee);
    std::map<int, int> points, heads; // heads[n]: intervals spanning (n, n+1)
    std::map<int, int> dim;
    for (int n = opt.lo; n <= opt.hi; ++n) {
        int budget = opt.max_dim - dim[n];
        if (budget <= 0) continue;
        int k = rng.uniform(budget + 1);
        int iv = n < opt.hi ? rng.uniform(std::min(budget - k, opt.max_dim) + 1) : 0;
        points[n] = k;
        heads[n] = iv;
        dim[n] += k + iv;
        dim[n + 1] += iv;
    }
    ChainComplex c(p);
    for (auto& [n, d] : dim)
        if (d > 0 && n >= opt.lo && n <= opt.hi) c.set_dim(n, d);
    // atom basis per degree: [points | tails of (n-1,n) intervals | heads of (n,n+1)]
    for (int n = opt.lo; n < opt.hi; ++n) {
        int dn = c.dim(n), dn1 = c.dim(n + 1);
        if (dn == 0 || dn1 == 0) continue;
        Mat d(dn1, dn, p);
        int head_base = points[n] + (n > opt.lo ? heads[n - 1] : 0);
        int tail_base = points[n + 1];
        for (int t = 0; t < heads[n]; ++t)
            if (head_base + t < dn && tail_base + t < dn1) d.at(tail_base + t, head_base + t) = 1;
        c.set_diff(n, d);
    }
    // conjugate by random invertibles
    ChainComplex out(p);
    for (auto& [n, d] : c.dims()) out.set_dim(n, d);
    std::map<int, Mat> basis;
    for (auto& [n, d] : c.dims()) basis[n] = random_invertible(rng, d, p);
    for (auto& [n, d] : c.dims()) {
        (void)d;
        if (c.dim(n + 1) == 0) continue;
        Mat binv(basis[n].rows(), basis[n].cols(), p);
        for (int j = 0; j < basis[n].cols(); ++j) {
            Mat e(basis[n].rows(), 1, p);
            e.at(j, 0) = 1;
            auto s = basis[n].solve(e);
            for (int i = 0; i < basis[n].rows(); ++i) binv.at(i, j) = s.x.at(i, 0);
        }
        out.set_diff(n, basis[n + 1].mul(c.diff(n)).mul(binv));
    }
    return out;
}

// Random chain map X -> Y: a seeded element of the solution space of the
// chain-map condition.
inline ChainMap random_chain_map(uint64_t seed, const ChainComplex& x, const ChainComplex& y) {
    LinSys sys(x.p());
    int fidx = sys.add_unknown(x, y, 0);
    sys.add_equation({LinSys::Term{fidx, GradedMap::diff_map(y), std::nullopt, 1},
                      LinSys::Term{fidx, std::nullopt, GradedMap::diff_map(x), -1}},
                     GradedMap::zero(x, y, 1));
    auto out = sys.solve();
    if (!out.ok) throw std::logic_error("chain map space is never empty");
    return out.sample(seed)[fidx];
}

inline Mat invert_square(const Mat& b) {
    Mat binv(b.rows(), b.cols(), b.p());
    for (int j = 0; j < b.cols(); ++j) {
        Mat e(b.rows(), 1, b.p());
        e.at(j, 0) = 1;
        auto s = b.solve(e);
        if (!s.ok) throw std::invalid_argument("invert_square: matrix is singular");
        for (int i = 0; i < b.rows(); ++i) binv.at(i, j) = s.x.at(i, 0);
    }
    return binv;
}

// Random strict isomorphism X -> X' onto a conjugated copy of X; the inverse
// is returned alongside.
struct Conjugate {
    ChainComplex y;
    ChainMap fwd, bwd;
};

inline Conjugate random_conjugate(Rng& rng, const ChainComplex& x) {
    int p = x.p();
    std::map<int, Mat> basis, basis_inv;
    for (auto& [n, d] : x.dims()) {
        basis[n] = random_invertible(rng, d, p);
        basis_inv[n] = invert_square(basis[n]);
    }
    ChainComplex y(p);
    for (auto& [n, d] : x.dims()) y.set_dim(n, d);
    for (auto& [n, d] : x.dims()) {
        (void)d;
        if (x.dim(n + 1) == 0) continue;
        y.set_diff(n, basis[n + 1].mul(x.diff(n)).mul(basis_inv[n]));
    }
    Conjugate out{y, ChainMap(x, y), ChainMap(y, x)};
    for (auto& [n, b] : basis) out.fwd.set(n, b);
    for (auto& [n, b] : basis_inv) out.bwd.set(n, b);
    return out;
}

// Random standard 2-triangle together with its certificate.
inline StandardBuild random_standard_2tri(int p, uint64_t seed, GenOptions opt = {}) {
    Rng rng(seed);
    ChainComplex a = random_complex(p, rng.next(), opt);
    ChainComplex b = random_complex(p, rng.next(), opt);
    ChainMap u = random_chain_map(rng.next(), a, b);
    return standard_2triangle(u);
}

// Random distinguished 2-triangle that is not literally standard: conjugates
// the cone vertex of a standard triangle by a random basis change.
inline NTriangle random_distinguished_2tri(int p, uint64_t seed, GenOptions opt = {}) {
    Rng rng(seed);
    StandardBuild sb = random_standard_2tri(p, rng.next(), opt);
    Conjugate cj = random_conjugate(rng, tri_c(sb.t));
    return make_2triangle(tri_a(sb.t), tri_b(sb.t), cj.y, tri_u(sb.t),
                          cj.fwd.compose(tri_v(sb.t)), tri_w(sb.t).compose(cj.bwd));
}

// Seeded point of the solution space of { f, g chain, g u ~ u' f }: the raw
// material for maps of triangles.
struct SquarePair {
    ChainMap f, g;
    GradedMap k; // d k + k d = g u - u' f
};

inline std::optional<SquarePair> random_commuting_square(uint64_t seed, const ChainMap& u,
                                                         const ChainMap& up) {
    LinSys sys(u.p());
    int fi = sys.add_unknown(u.src(), up.src(), 0);
    int gi = sys.add_unknown(u.tgt(), up.tgt(), 0);
    int ki = sys.add_unknown(u.src(), up.tgt(), -1);
    sys.add_equation({LinSys::Term{fi, GradedMap::diff_map(up.src()), std::nullopt, 1},
                      LinSys::Term{fi, std::nullopt, GradedMap::diff_map(u.src()), -1}},
                     GradedMap::zero(u.src(), up.src(), 1));
    sys.add_equation({LinSys::Term{gi, GradedMap::diff_map(up.tgt()), std::nullopt, 1},
                      LinSys::Term{gi, std::nullopt, GradedMap::diff_map(u.tgt()), -1}},
                     GradedMap::zero(u.tgt(), up.tgt(), 1));
    sys.add_equation({LinSys::Term{gi, std::nullopt, u, 1},
                      LinSys::Term{fi, up, std::nullopt, -1},
                      LinSys::Term{ki, GradedMap::diff_map(up.tgt()), std::nullopt, -1},
                      LinSys::Term{ki, std::nullopt, GradedMap::diff_map(u.src()), -1}},
                     GradedMap::zero(u.src(), up.tgt(), 0));
    auto out = sys.solve();
    if (!out.ok) return std::nullopt;
    auto inst = out.sample(seed);
    return SquarePair{inst[fi], inst[gi], inst[ki]};
}

// Random distinguished map of 2-triangles between random distinguished
// endpoints: the homotopy-type cone block conjugated along the certificates.
struct RandomMap2 {
    TriangleMap map;
    DistTriangle cert_src, cert_tgt;
};

inline RandomMap2 random_distinguished_map2(int p, uint64_t seed, GenOptions opt = {}) {
    Rng rng(seed);
    NTriangle src = random_distinguished_2tri(p, rng.next(), opt);
    NTriangle tgt = random_distinguished_2tri(p, rng.next(), opt);
    Verdict2 vs = check_distinguished_2(src);
    Verdict2 vt = check_distinguished_2(tgt);
    if (vs.status != Status::Yes || vt.status != Status::Yes)
        throw std::logic_error("conjugated standard failed its own decider");
    auto sq = random_commuting_square(rng.next(), tri_u(src), tri_u(tgt));
    if (!sq) throw std::logic_error("commuting-square space is never empty");
    Cone cu = mapping_cone(tri_u(src)), cup = mapping_cone(tri_u(tgt));
    ChainMap hstd = cone_block(tri_u(src), tri_u(tgt), sq->f, sq->g, sq->k, cu, cup);
    ChainMap h = vt.cert->phi(VertexKey(1, 2)).compose(hstd).compose(
        vs.cert->phi_inv(VertexKey(1, 2)));
    return RandomMap2{make_map2(src, tgt, sq->f, sq->g, h), *vs.cert, *vt.cert};
}

} // namespace ntri
