#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ntri {

// Vertex a_{i,j} of a rectified simplex, stored with i < j.
struct VertexKey {
    int i, j;
    VertexKey(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
        if (a == b) throw std::invalid_argument("vertex indices must differ");
    }
    bool operator<(const VertexKey& o) const { return std::tie(i, j) < std::tie(o.i, o.j); }
    bool operator==(const VertexKey& o) const { return i == o.i && j == o.j; }
    bool operator!=(const VertexKey& o) const { return !(*this == o); }
    bool contains(int x) const { return i == x || j == x; }
    std::string str() const { return "a_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }
};

// Edge e_{i,j,k} between a_{i,j} and a_{i,k}, stored with j < k and i != j,k.
// Plain when i < j or k < i; reversed with shift degree 1 when j < i < k.
struct EdgeKey {
    int i, j, k;
    EdgeKey(int common, int a, int b) : i(common), j(std::min(a, b)), k(std::max(a, b)) {
        if (a == b || common == a || common == b)
            throw std::invalid_argument("edge indices must be distinct");
    }
    bool wavy() const { return j < i && i < k; }
    VertexKey source() const { return wavy() ? VertexKey(i, k) : VertexKey(i, j); }
    VertexKey target() const { return wavy() ? VertexKey(i, j) : VertexKey(i, k); }
    int shift() const { return wavy() ? 1 : 0; }
    bool operator<(const EdgeKey& o) const { return std::tie(i, j, k) < std::tie(o.i, o.j, o.k); }
    bool operator==(const EdgeKey& o) const { return i == o.i && j == o.j && k == o.k; }
    std::string str() const {
        return "e_{" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "}";
    }
};

inline long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

// The m-rotated directed n-simplex. Obtained from the ordered simplex by the
// cyclic relabeling x -> x + m (mod n+1); an edge whose endpoints invert
// order under the relabeling is reversed and carries shift degree 1.
struct DirectedSimplexShape {
    int n;
    int m; // kept unreduced for bookkeeping; the shape depends on m mod n+1

    int m_reduced() const {
        int q = (m % (n + 1) + (n + 1)) % (n + 1);
        return q;
    }

    // Edge between vertices x < y of the shape.
    bool edge_wavy(int x, int y) const {
        check_pair(x, y);
        int r = m_reduced();
        return x < r && r <= y;
    }
    // Plain edges run x -> y; wavy edges run y -> x with shift 1.
    int edge_source(int x, int y) const { return edge_wavy(x, y) ? std::max(x, y) : std::min(x, y); }
    int edge_target(int x, int y) const { return edge_wavy(x, y) ? std::min(x, y) : std::max(x, y); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int x = 0; x <= n; ++x)
            for (int y = x + 1; y <= n; ++y) out.emplace_back(x, y);
        return out;
    }

    bool same_shape(const DirectedSimplexShape& o) const {
        return n == o.n && m_reduced() == o.m_reduced();
    }

private:
    void check_pair(int x, int y) const {
        if (x < 0 || y < 0 || x > n || y > n || x == y)
            throw std::out_of_range("simplex vertex pair out of range");
    }
};

inline DirectedSimplexShape build_directed_simplex(int n, int m) {
    if (n < 0) throw std::invalid_argument("simplex dimension must be >= 0");
    return DirectedSimplexShape{n, m};
}

// The directed rectified n-simplex R_n.
struct RectifiedShape {
    int n;

    std::vector<VertexKey> vertices() const {
        std::vector<VertexKey> out;
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
        return out;
    }

    std::vector<EdgeKey> edges() const {
        std::vector<EdgeKey> out;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k)
                    if (j != i && k != i) out.emplace_back(i, j, k);
        return out;
    }
};

inline RectifiedShape build_rectified_shape(int n) {
    if (n < 1) throw std::invalid_argument("rectified simplex dimension must be >= 1");
    return RectifiedShape{n};
}

// Simplex face F_i: the sub-diagram of R_n shaped like the i-rotated
// (n-1)-simplex, on the vertices whose index pair contains i.
struct SimplexFaceEmbedding {
    int n, i;
    DirectedSimplexShape shape; // dimension n-1, rotation i

    // Face vertex x (0..n-1) lands on the pair {i, x'} with x' = x + (x >= i).
    VertexKey vertex_image(int x) const {
        if (x < 0 || x >= n) throw std::out_of_range("face vertex index");
        int xp = x + (x >= i ? 1 : 0);
        return VertexKey(i, xp);
    }
    EdgeKey edge_image(int x, int y) const {
        VertexKey a = vertex_image(x), b = vertex_image(y);
        int ap = a.contains(i) ? (a.i == i ? a.j : a.i) : -1;
        int bp = b.contains(i) ? (b.i == i ? b.j : b.i) : -1;
        return EdgeKey(i, ap, bp);
    }
};

inline SimplexFaceEmbedding face_simplex(const RectifiedShape& s, int i) {
    if (i < 0 || i > s.n) throw std::out_of_range("simplex face index");
    return SimplexFaceEmbedding{s.n, i, DirectedSimplexShape{s.n - 1, i}};
}

// Rectified face f^pi_i: the R_{n-1} sub-diagram on vertices avoiding index
// i, relabeled by deleting i (Balmer description: delete row i and column i).
struct RectifiedFaceEmbedding {
    int n, i;
    RectifiedShape shape; // dimension n-1

    VertexKey vertex_image(const VertexKey& v) const {
        return VertexKey(insert(v.i), insert(v.j));
    }
    EdgeKey edge_image(const EdgeKey& e) const {
        return EdgeKey(insert(e.i), insert(e.j), insert(e.k));
    }
    int insert(int x) const { return x + (x >= i ? 1 : 0); }
    int remove(int x) const { return x - (x > i ? 1 : 0); }
};

inline RectifiedFaceEmbedding face_rectified(const RectifiedShape& s, int i) {
    if (s.n < 2) throw std::invalid_argument("rectified face needs dimension >= 2");
    if (i < 0 || i > s.n) throw std::out_of_range("rectified face index");
    return RectifiedFaceEmbedding{s.n, i, RectifiedShape{s.n - 1}};
}

struct Counts {
    long long vertices;
    long long edges;
    long long simplex_facets;
    long long rectified_facets;
};

inline Counts counts(int n) {
    if (n < 1) throw std::invalid_argument("counts needs n >= 1");
    return Counts{binom(n + 1, 2), binom(n + 1, 2) * (n - 1), n + 1, n + 1};
}

// Full face lattice of R_n viewed as the hypersimplex with two unit
// coordinates: a face pins a coordinate set S0 to 0 and S1 to 1 (|S1| <= 2);
// faces are deduplicated by vertex set. Returns count per dimension.
inline std::map<int, long long> face_lattice_counts(int n) {
    std::set<std::vector<VertexKey>> seen;
    std::map<int, long long> out;
    int total = n + 1;
    for (uint32_t s0 = 0; s0 < (1u << total); ++s0) {
        for (uint32_t s1 = 0; s1 < (1u << total); ++s1) {
            if (s0 & s1) continue;
            int ones = __builtin_popcount(s1);
            if (ones > 2) continue;
            std::vector<VertexKey> verts;
            for (int i = 0; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    uint32_t pair_mask = (1u << i) | (1u << j);
                    if (pair_mask & s0) continue;
                    if ((s1 & pair_mask) != s1) continue;
                    verts.emplace_back(i, j);
                }
            if (verts.empty() || static_cast<long long>(verts.size()) == binom(n + 1, 2))
                continue; // empty face / whole polytope
            int dim;
            int free_coords = total - __builtin_popcount(s0) - ones;
            if (ones == 2) dim = 0;
            else if (ones == 1) dim = free_coords - 1; // simplex face
            else dim = free_coords >= 3 ? free_coords - 1 : 0; // rectified face
            std::sort(verts.begin(), verts.end());
            if (seen.insert(verts).second) out[dim] += 1;
        }
    }
    return out;
}

// The canonical cycle a_{0,1} -> a_{0,n} -> a_{n-1,n} ~> ... ~> a_{0,1};
// total shift degree along it is n-1.
inline std::vector<EdgeKey> canonical_cycle(int n) {
    if (n < 2) throw std::invalid_argument("canonical cycle needs n >= 2");
    std::vector<EdgeKey> out;
    out.emplace_back(0, 1, n);
    out.emplace_back(n, 0, n - 1);
    for (int j = n - 1; j >= 1; --j) out.emplace_back(j, j - 1, j + 1);
    return out;
}

inline int cycle_total_shift(const std::vector<EdgeKey>& cycle) {
    int s = 0;
    for (auto& e : cycle) s += e.shift();
    return s;
}

struct GridCell {
    int row, col;
    bool repeated; // the shifted copy in the extra right-hand column
    bool operator==(const GridCell& o) const {
        return row == o.row && col == o.col && repeated == o.repeated;
    }
};

// Balmer staircase layout: a_{i,j} at (row i, column j), plus the repeated
// column n+1 holding a_{0,1}..a_{0,n} shifted by [1] at rows 1..n.
inline std::map<VertexKey, GridCell> balmer_layout(int n) {
    std::map<VertexKey, GridCell> out;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.emplace(VertexKey(i, j), GridCell{i, j, false});
    return out;
}

inline std::vector<std::pair<VertexKey, GridCell>> balmer_repeats(int n) {
    std::vector<std::pair<VertexKey, GridCell>> out;
    if (n < 2) return out;
    for (int j = 1; j <= n; ++j) out.emplace_back(VertexKey(0, j), GridCell{j, n + 1, true});
    return out;
}

} // namespace ntri
