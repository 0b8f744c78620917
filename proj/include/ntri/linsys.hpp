#pragma once

#include "ntri/complex.hpp"

#include <functional>
#include <vector>

namespace ntri {

// Dual certificate of an unsolvable affine system: y A = 0 and y b != 0.
// Rechecking is plain matrix arithmetic against the stored system.
struct NoWitness {
    Mat A, b, y;

    bool recheck() const {
        if (y.rows() != 1 || y.cols() != A.rows()) return false;
        return y.mul(A).is_zero() && !y.mul(b).is_zero();
    }
};

// Simultaneous linear equations whose unknowns are graded maps. Equations
// have the form  sum_t coeff_t * L_t o X_{u_t} o R_t = rhs,  assembled into
// one dense system over GF(p) and solved by exact elimination.
class LinSys {
public:
    explicit LinSys(int p) : p_(p) {}

    int add_unknown(const ChainComplex& src, const ChainComplex& tgt, int deg) {
        unknowns_.push_back(UnknownSpec{src, tgt, deg, {}});
        return static_cast<int>(unknowns_.size()) - 1;
    }

    struct Term {
        int unknown;
        std::optional<GradedMap> left;  // defaults to identity on the unknown's target
        std::optional<GradedMap> right; // defaults to identity on the unknown's source
        int coeff = 1;
    };

    void add_equation(std::vector<Term> terms, const GradedMap& rhs) {
        equations_.push_back(Equation{std::move(terms), rhs});
    }

    struct Solution {
        std::vector<GradedMap> values;
        const GradedMap& operator[](int u) const { return values[static_cast<size_t>(u)]; }
    };

    struct Outcome {
        bool ok = false;
        Solution particular;
        int null_dim = 0;
        NoWitness no;
        // Recovers particular + combination of nullspace vectors chosen by a
        // deterministic seed; sample(0) is the particular solution.
        std::function<Solution(uint64_t)> sample;
    };

    Outcome solve() {
        layout_columns();
        Field F(p_);
        int rows = 0;
        for (auto& eq : equations_) rows += equation_rows(eq);
        Mat A(rows, total_cols_, p_);
        Mat b(rows, 1, p_);
        int r0 = 0;
        for (auto& eq : equations_) r0 = emit_equation(eq, A, b, r0);

        Mat::Solve s = A.solve(b);
        Outcome out;
        if (!s.ok) {
            out.ok = false;
            out.no = NoWitness{A, b, s.dual};
            return out;
        }
        out.ok = true;
        out.particular = unpack(s.x);
        out.null_dim = static_cast<int>(s.null_basis.size());
        // capture by value for deterministic replay
        auto null_basis = s.null_basis;
        auto x0 = s.x;
        auto self = *this; // column layout snapshot
        out.sample = [self, x0, null_basis](uint64_t seed) {
            Mat x = x0;
            uint64_t st = seed;
            Field FF(self.p_);
            for (auto& v : null_basis) {
                // splitmix64 step
                st += 0x9e3779b97f4a7c15ULL;
                uint64_t z = st;
                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                z ^= z >> 31;
                int c = static_cast<int>(z % static_cast<uint64_t>(self.p_));
                if (c) x = x.add(v.scale(c));
                (void)FF;
            }
            return self.unpack(x);
        };
        return out;
    }

private:
    struct UnknownSpec {
        ChainComplex src, tgt;
        int deg;
        std::map<int, int> base_of_degree;
    };

    struct Equation {
        std::vector<Term> terms;
        GradedMap rhs;
    };

    void layout_columns() {
        total_cols_ = 0;
        for (auto& u : unknowns_) {
            u.base_of_degree.clear();
            for (auto& [n, dn] : u.src.dims()) {
                int dm = u.tgt.dim(n + u.deg);
                if (dn == 0 || dm == 0) continue;
                u.base_of_degree[n] = total_cols_;
                total_cols_ += dn * dm;
            }
        }
    }

    static int degree_lo(const GradedMap& rhs) { return rhs.src().lo(); }
    static int degree_hi(const GradedMap& rhs) { return rhs.src().hi(); }

    int equation_rows(const Equation& eq) const {
        int rows = 0;
        const ChainComplex& S = eq.rhs.src();
        const ChainComplex& T = eq.rhs.tgt();
        for (auto& [n, dn] : S.dims()) rows += dn * T.dim(n + eq.rhs.deg());
        return rows;
    }

    int emit_equation(const Equation& eq, Mat& A, Mat& b, int r0) {
        Field F(p_);
        const ChainComplex& S = eq.rhs.src();
        const ChainComplex& T = eq.rhs.tgt();
        int de = eq.rhs.deg();
        for (auto& [n, dn] : S.dims()) {
            int dm = T.dim(n + de);
            if (dm == 0) continue;
            Mat rhs_n = eq.rhs.at(n);
            for (int r = 0; r < dm; ++r)
                for (int c = 0; c < dn; ++c) b.at(r0 + r * dn + c, 0) = rhs_n.at(r, c);
            for (auto& t : eq.terms) {
                const UnknownSpec& u = unknowns_[static_cast<size_t>(t.unknown)];
                int rho = t.right ? t.right->deg() : 0;
                int lam = t.left ? t.left->deg() : 0;
                if (rho + lam + u.deg != de)
                    throw std::invalid_argument("equation term degree mismatch");
                int m = n + rho; // degree of the unknown component involved
                auto bit = u.base_of_degree.find(m);
                if (bit == u.base_of_degree.end()) continue;
                int base = bit->second;
                int xs = u.src.dim(m), xt = u.tgt.dim(m + u.deg);
                Mat L = t.left ? t.left->at(m + u.deg) : Mat::identity(xt, p_);
                Mat R = t.right ? t.right->at(n) : Mat::identity(xs, p_);
                if (L.rows() != dm || L.cols() != xt || R.rows() != xs || R.cols() != dn)
                    throw std::invalid_argument("equation term shape mismatch");
                // A[row, col] += coeff * L[r,i] * R[j,c]
                for (int r = 0; r < dm; ++r)
                    for (int i = 0; i < xt; ++i) {
                        int lv = L.at(r, i);
                        if (!lv) continue;
                        for (int j = 0; j < xs; ++j)
                            for (int c = 0; c < dn; ++c) {
                                int rv = R.at(j, c);
                                if (!rv) continue;
                                int row = r0 + r * dn + c;
                                int col = base + i * xs + j;
                                int add = F.reduce(static_cast<long long>(t.coeff) * lv * rv);
                                A.at(row, col) = static_cast<uint8_t>(F.add(A.at(row, col), add));
                            }
                    }
            }
            r0 += dm * dn;
        }
        return r0;
    }

    Solution unpack(const Mat& x) const {
        Solution sol;
        for (auto& u : unknowns_) {
            GradedMap g(u.src, u.tgt, u.deg);
            for (auto& [m, base] : u.base_of_degree) {
                int xs = u.src.dim(m), xt = u.tgt.dim(m + u.deg);
                Mat comp(xt, xs, p_);
                for (int i = 0; i < xt; ++i)
                    for (int j = 0; j < xs; ++j) comp.at(i, j) = x.at(base + i * xs + j, 0);
                g.set(m, comp);
            }
            sol.values.push_back(std::move(g));
        }
        return sol;
    }

    int p_;
    int total_cols_ = 0;
    std::vector<UnknownSpec> unknowns_;
    std::vector<Equation> equations_;
};

} // namespace ntri
