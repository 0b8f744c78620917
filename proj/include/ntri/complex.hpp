#pragma once

#include "ntri/matrix.hpp"

#include <map>
#include <optional>
#include <string>

namespace ntri {

// Bounded cochain complex over GF(p): finitely many nonzero degrees, with
// differential d^n : C^n -> C^{n+1} and d^{n+1} d^n = 0.
class ChainComplex {
public:
    explicit ChainComplex(int p = 2) : p_(p) {}

    static ChainComplex zero(int p) { return ChainComplex(p); }

    // One-dimensional-per-listed-degree helper: k^dim placed in `deg`.
    static ChainComplex concentrated(int p, int deg, int dim) {
        ChainComplex c(p);
        c.set_dim(deg, dim);
        return c;
    }

    int p() const { return p_; }

    int dim(int n) const {
        auto it = dims_.find(n);
        return it == dims_.end() ? 0 : it->second;
    }

    void set_dim(int n, int d) {
        if (d < 0) throw std::invalid_argument("negative dimension");
        if (d == 0) dims_.erase(n);
        else dims_[n] = d;
    }

    const std::map<int, int>& dims() const { return dims_; }

    bool is_zero_object() const { return dims_.empty(); }

    // Support bounds; [0, 0) when empty.
    int lo() const { return dims_.empty() ? 0 : dims_.begin()->first; }
    int hi() const { return dims_.empty() ? -1 : dims_.rbegin()->first; }

    Mat diff(int n) const {
        auto it = diff_.find(n);
        if (it != diff_.end()) return it->second;
        return Mat(dim(n + 1), dim(n), p_);
    }

    void set_diff(int n, const Mat& d) {
        if (d.rows() != dim(n + 1) || d.cols() != dim(n) || d.p() != p_)
            throw std::invalid_argument("differential shape mismatch at degree " + std::to_string(n));
        if (d.is_zero()) diff_.erase(n);
        else diff_[n] = d;
    }

    struct Violation {
        int degree;
        std::string what;
    };

    // d^2 = 0 and shape bookkeeping; reports the first failing degree.
    std::optional<Violation> validate() const {
        for (auto& [n, m] : diff_) {
            if (m.rows() != dim(n + 1) || m.cols() != dim(n))
                return Violation{n, "differential shape does not match graded dimensions"};
        }
        for (auto& [n, m] : diff_) {
            Mat dd = diff(n + 1).mul(m);
            if (!dd.is_zero())
                return Violation{n, "d o d != 0 entering degree " + std::to_string(n + 2)};
        }
        return std::nullopt;
    }

    // (C[k])^n = C^{n+k}; differential scaled by (-1)^k.
    ChainComplex shift(int k) const {
        ChainComplex out(p_);
        for (auto& [n, d] : dims_) out.set_dim(n - k, d);
        for (auto& [n, m] : diff_) {
            Mat s = (k % 2 == 0) ? m : m.negate();
            out.set_diff(n - k, s);
        }
        return out;
    }

    ChainComplex direct_sum(const ChainComplex& o) const {
        if (p_ != o.p_) throw std::invalid_argument("field mismatch");
        ChainComplex out(p_);
        int a = std::min(dims_.empty() ? 0 : lo(), o.dims_.empty() ? 0 : o.lo());
        int b = std::max(dims_.empty() ? -1 : hi(), o.dims_.empty() ? -1 : o.hi());
        for (int n = a; n <= b; ++n) out.set_dim(n, dim(n) + o.dim(n));
        for (int n = a; n <= b; ++n) {
            if (out.dim(n) == 0 || out.dim(n + 1) == 0) continue;
            out.set_diff(n, Mat::diag_sum(diff(n), o.diff(n)));
        }
        return out;
    }

    int total_dim() const {
        int t = 0;
        for (auto& [n, d] : dims_) t += d;
        return t;
    }

    bool operator==(const ChainComplex& o) const {
        if (p_ != o.p_ || dims_ != o.dims_) return false;
        int a = std::min(lo(), o.lo()), b = std::max(hi(), o.hi());
        for (int n = a; n <= b; ++n)
            if (diff(n) != o.diff(n)) return false;
        return true;
    }
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }

private:
    int p_;
    std::map<int, int> dims_;
    std::map<int, Mat> diff_;
};

// Degreewise family of matrices f^n : src^n -> tgt^{n+deg}. Degree 0 maps
// satisfying the chain condition are chain maps; degree -1 maps are the raw
// data of homotopies.
class GradedMap {
public:
    GradedMap() : deg_(0) {}
    GradedMap(ChainComplex src, ChainComplex tgt, int deg = 0)
        : src_(std::move(src)), tgt_(std::move(tgt)), deg_(deg) {
        if (src_.p() != tgt_.p()) throw std::invalid_argument("field mismatch");
    }

    static GradedMap identity(const ChainComplex& c) {
        GradedMap f(c, c, 0);
        for (auto& [n, d] : c.dims()) f.set(n, Mat::identity(d, c.p()));
        return f;
    }

    static GradedMap zero(const ChainComplex& src, const ChainComplex& tgt, int deg = 0) {
        return GradedMap(src, tgt, deg);
    }

    // The differential as a degree +1 graded map C -> C.
    static GradedMap diff_map(const ChainComplex& c) {
        GradedMap f(c, c, 1);
        for (auto& [n, d] : c.dims()) {
            (void)d;
            f.set(n, c.diff(n));
        }
        return f;
    }

    const ChainComplex& src() const { return src_; }
    const ChainComplex& tgt() const { return tgt_; }
    int p() const { return src_.p(); }
    int deg() const { return deg_; }

    Mat at(int n) const {
        auto it = comp_.find(n);
        if (it != comp_.end()) return it->second;
        return Mat(tgt_.dim(n + deg_), src_.dim(n), p());
    }

    void set(int n, const Mat& m) {
        if (m.rows() != tgt_.dim(n + deg_) || m.cols() != src_.dim(n) || m.p() != p())
            throw std::invalid_argument("component shape mismatch at degree " + std::to_string(n));
        if (m.is_zero()) comp_.erase(n);
        else comp_[n] = m;
    }

    const std::map<int, Mat>& components() const { return comp_; }

    bool is_zero() const {
        for (auto& [n, m] : comp_)
            if (!m.is_zero()) return false;
        return true;
    }

    GradedMap compose(const GradedMap& inner) const {
        // this o inner
        if (inner.tgt_ != src_) throw std::invalid_argument("compose: middle complexes differ");
        GradedMap out(inner.src_, tgt_, deg_ + inner.deg_);
        for (auto& [n, d] : inner.src_.dims()) {
            (void)d;
            out.set(n, at(n + inner.deg_).mul(inner.at(n)));
        }
        return out;
    }

    GradedMap add(const GradedMap& o) const {
        require_parallel(o);
        GradedMap out(src_, tgt_, deg_);
        for (auto& [n, d] : src_.dims()) {
            (void)d;
            out.set(n, at(n).add(o.at(n)));
        }
        return out;
    }

    GradedMap sub(const GradedMap& o) const {
        require_parallel(o);
        GradedMap out(src_, tgt_, deg_);
        for (auto& [n, d] : src_.dims()) {
            (void)d;
            out.set(n, at(n).sub(o.at(n)));
        }
        return out;
    }

    GradedMap negate() const {
        GradedMap out(src_, tgt_, deg_);
        for (auto& [n, m] : comp_) out.set(n, m.negate());
        return out;
    }

    GradedMap scale(int c) const {
        GradedMap out(src_, tgt_, deg_);
        for (auto& [n, m] : comp_) out.set(n, m.scale(c));
        return out;
    }

    // Components shift without sign: (f[k])^n = f^{n+k}.
    GradedMap shift(int k) const {
        GradedMap out(src_.shift(k), tgt_.shift(k), deg_);
        for (auto& [n, m] : comp_) out.set(n - k, m);
        return out;
    }

    GradedMap direct_sum(const GradedMap& o) const {
        if (deg_ != o.deg_) throw std::invalid_argument("direct_sum: degree mismatch");
        GradedMap out(src_.direct_sum(o.src_), tgt_.direct_sum(o.tgt_), deg_);
        for (auto& [n, d] : out.src().dims()) {
            (void)d;
            out.set(n, Mat::block({{at(n), Mat(tgt_.dim(n + deg_), o.src_.dim(n), p())},
                                   {Mat(o.tgt_.dim(n + deg_), src_.dim(n), p()), o.at(n)}}));
        }
        return out;
    }

    // d_tgt f = f d_src, degreewise. Meaningful for degree 0.
    bool is_chain() const {
        if (deg_ != 0) return false;
        int a = std::min(src_.lo(), tgt_.lo()) - 1, b = std::max(src_.hi(), tgt_.hi()) + 1;
        for (int n = a; n <= b; ++n)
            if (tgt_.diff(n) .mul(at(n)) != at(n + 1).mul(src_.diff(n))) return false;
        return true;
    }

    bool operator==(const GradedMap& o) const {
        if (deg_ != o.deg_ || src_ != o.src_ || tgt_ != o.tgt_) return false;
        int a = std::min(src_.lo(), o.src_.lo()), b = std::max(src_.hi(), o.src_.hi());
        for (int n = a; n <= b; ++n)
            if (at(n) != o.at(n)) return false;
        return true;
    }
    bool operator!=(const GradedMap& o) const { return !(*this == o); }

private:
    void require_parallel(const GradedMap& o) const {
        if (deg_ != o.deg_ || src_ != o.src_ || tgt_ != o.tgt_)
            throw std::invalid_argument("graded maps are not parallel");
    }

    ChainComplex src_, tgt_;
    int deg_;
    std::map<int, Mat> comp_;
};

using ChainMap = GradedMap;
using Homotopy = GradedMap;

// d_tgt o h + h o d_src, the chain map witnessed null-homotopic by h.
inline GradedMap homotopy_boundary(const GradedMap& h) {
    GradedMap dh = GradedMap::diff_map(h.tgt()).compose(h);
    GradedMap hd = h.compose(GradedMap::diff_map(h.src()));
    GradedMap out(h.src(), h.tgt(), h.deg() + 1);
    for (auto& [n, d] : h.src().dims()) {
        (void)d;
        out.set(n, dh.at(n).add(hd.at(n)));
    }
    return out;
}

} // namespace ntri
