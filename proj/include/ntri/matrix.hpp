#pragma once

#include "ntri/field.hpp"

#include <cassert>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ntri {

// Dense matrix over GF(p). A matrix of shape r x c represents a linear map
// from a c-dimensional space to an r-dimensional space; composition is
// ordinary matrix product, vectors are column matrices. Zero-dimensional
// shapes are legal everywhere.
class Mat {
public:
    Mat() : rows_(0), cols_(0), p_(2) {}
    Mat(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
        a_.assign(static_cast<size_t>(rows) * cols, 0);
    }

    static Mat zero(int rows, int cols, int p) { return Mat(rows, cols, p); }

    static Mat identity(int n, int p) {
        Mat m(n, n, p);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Mat scalar(int n, int value, int p) {
        Mat m(n, n, p);
        Field F(p);
        for (int i = 0; i < n; ++i) m.at(i, i) = static_cast<uint8_t>(F.reduce(value));
        return m;
    }

    static Mat from_rows(const std::vector<std::vector<int>>& rows, int p) {
        int r = static_cast<int>(rows.size());
        int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        Mat m(r, c, p);
        Field F(p);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c)
                throw std::invalid_argument("ragged matrix literal");
            for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<uint8_t>(F.reduce(rows[i][j]));
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int p() const { return p_; }

    uint8_t& at(int r, int c) {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return a_[static_cast<size_t>(r) * cols_ + c];
    }
    uint8_t at(int r, int c) const {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return a_[static_cast<size_t>(r) * cols_ + c];
    }

    bool is_zero() const {
        for (uint8_t v : a_)
            if (v) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat mul(const Mat& o) const {
        check_field(o);
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat out(rows_, o.cols_, p_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                int v = at(i, k);
                if (!v) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    int w = o.at(k, j);
                    if (!w) continue;
                    out.at(i, j) = static_cast<uint8_t>((out.at(i, j) + v * w) % p_);
                }
            }
        return out;
    }

    Mat add(const Mat& o) const {
        check_shape(o);
        Mat out(rows_, cols_, p_);
        for (size_t i = 0; i < a_.size(); ++i) {
            int s = a_[i] + o.a_[i];
            out.a_[i] = static_cast<uint8_t>(s >= p_ ? s - p_ : s);
        }
        return out;
    }

    Mat sub(const Mat& o) const {
        check_shape(o);
        Mat out(rows_, cols_, p_);
        for (size_t i = 0; i < a_.size(); ++i) {
            int s = a_[i] - o.a_[i];
            out.a_[i] = static_cast<uint8_t>(s < 0 ? s + p_ : s);
        }
        return out;
    }

    Mat negate() const {
        Mat out(rows_, cols_, p_);
        for (size_t i = 0; i < a_.size(); ++i)
            out.a_[i] = static_cast<uint8_t>(a_[i] ? p_ - a_[i] : 0);
        return out;
    }

    Mat scale(int c) const {
        Field F(p_);
        int cc = F.reduce(c);
        Mat out(rows_, cols_, p_);
        for (size_t i = 0; i < a_.size(); ++i)
            out.a_[i] = static_cast<uint8_t>(a_[i] * cc % p_);
        return out;
    }

    Mat transpose() const {
        Mat out(cols_, rows_, p_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    Mat hcat(const Mat& o) const {
        check_field(o);
        if (rows_ != o.rows_) throw std::invalid_argument("hcat row mismatch");
        Mat out(rows_, cols_ + o.cols_, p_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
            for (int j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
        }
        return out;
    }

    Mat vcat(const Mat& o) const {
        check_field(o);
        if (cols_ != o.cols_) throw std::invalid_argument("vcat column mismatch");
        Mat out(rows_ + o.rows_, cols_, p_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(rows_ + i, j) = o.at(i, j);
        return out;
    }

    // Assembles a grid of blocks. Row band heights and column band widths must
    // be consistent across the grid.
    static Mat block(const std::vector<std::vector<Mat>>& grid) {
        if (grid.empty()) return Mat(0, 0, 2);
        size_t bands = grid.size(), cols = grid[0].size();
        int p = 2;
        bool p_set = false;
        std::vector<int> h(bands, -1), w(cols, -1);
        for (size_t i = 0; i < bands; ++i) {
            if (grid[i].size() != cols) throw std::invalid_argument("ragged block grid");
            for (size_t j = 0; j < cols; ++j) {
                const Mat& m = grid[i][j];
                if (!p_set) { p = m.p(); p_set = true; }
                else if (m.p() != p) throw std::invalid_argument("block field mismatch");
                if (h[i] < 0) h[i] = m.rows();
                else if (h[i] != m.rows()) throw std::invalid_argument("block row band mismatch");
                if (w[j] < 0) w[j] = m.cols();
                else if (w[j] != m.cols()) throw std::invalid_argument("block column band mismatch");
            }
        }
        int R = 0, C = 0;
        for (int x : h) R += x;
        for (int x : w) C += x;
        Mat out(R, C, p);
        int r0 = 0;
        for (size_t i = 0; i < bands; ++i) {
            int c0 = 0;
            for (size_t j = 0; j < cols; ++j) {
                const Mat& m = grid[i][j];
                for (int r = 0; r < m.rows(); ++r)
                    for (int c = 0; c < m.cols(); ++c) out.at(r0 + r, c0 + c) = m.at(r, c);
                c0 += w[j];
            }
            r0 += h[i];
        }
        return out;
    }

    static Mat diag_sum(const Mat& a, const Mat& b) {
        return block({{a, Mat(a.rows(), b.cols(), a.p())},
                      {Mat(b.rows(), a.cols(), a.p()), b}});
    }

    Mat submatrix(int r0, int c0, int nrows, int ncols) const {
        Mat out(nrows, ncols, p_);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) out.at(i, j) = at(r0 + i, c0 + j);
        return out;
    }

    int rank() const {
        Mat tmp(*this);
        return tmp.rref_in_place(cols_);
    }

    // Outcome of solving A x = b. On success `x` is one solution and
    // `null_basis` spans ker A. On failure `dual` is a row vector y with
    // y A = 0 and y b != 0, an arithmetic certificate of unsolvability.
    struct Solve;

    // Deterministic Gauss-Jordan with first-nonzero pivoting; bit-packed
    // fast path for p = 2.
    Solve solve(const Mat& b) const;

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (int i = 0; i < rows_; ++i) {
            if (i) os << "; ";
            for (int j = 0; j < cols_; ++j) {
                if (j) os << ' ';
                os << static_cast<int>(at(i, j));
            }
        }
        os << ']';
        return os.str();
    }

private:
    void check_field(const Mat& o) const {
        if (p_ != o.p_) throw std::invalid_argument("field mismatch");
    }
    void check_shape(const Mat& o) const {
        check_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    // Reduces in place to reduced row echelon form, restricting pivot search
    // to the first `pivot_cols` columns. Returns the rank.
    int rref_in_place(int pivot_cols, std::vector<std::pair<int, int>>* pivots = nullptr) {
        if (p_ == 2) return rref_gf2(pivot_cols, pivots);
        Field F(p_);
        int r = 0;
        for (int c = 0; c < pivot_cols && r < rows_; ++c) {
            int pr = -1;
            for (int i = r; i < rows_; ++i)
                if (at(i, c)) { pr = i; break; }
            if (pr < 0) continue;
            if (pr != r)
                for (int j = 0; j < cols_; ++j) std::swap(at(r, j), at(pr, j));
            int s = F.inv(at(r, c));
            if (s != 1)
                for (int j = 0; j < cols_; ++j) at(r, j) = static_cast<uint8_t>(at(r, j) * s % p_);
            for (int i = 0; i < rows_; ++i) {
                if (i == r) continue;
                int f = at(i, c);
                if (!f) continue;
                for (int j = 0; j < cols_; ++j) {
                    int v = at(i, j) - f * at(r, j) % p_;
                    at(i, j) = static_cast<uint8_t>(v < 0 ? v + p_ : v);
                }
            }
            if (pivots) pivots->emplace_back(r, c);
            ++r;
        }
        return r;
    }

    int rref_gf2(int pivot_cols, std::vector<std::pair<int, int>>* pivots) {
        int words = (cols_ + 63) / 64;
        if (words == 0) words = 1;
        std::vector<uint64_t> bits(static_cast<size_t>(rows_) * words, 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j)) bits[static_cast<size_t>(i) * words + j / 64] |= 1ULL << (j % 64);
        int r = 0;
        for (int c = 0; c < pivot_cols && r < rows_; ++c) {
            size_t w = static_cast<size_t>(c) / 64;
            uint64_t m = 1ULL << (c % 64);
            int pr = -1;
            for (int i = r; i < rows_; ++i)
                if (bits[static_cast<size_t>(i) * words + w] & m) { pr = i; break; }
            if (pr < 0) continue;
            if (pr != r)
                for (int k = 0; k < words; ++k)
                    std::swap(bits[static_cast<size_t>(r) * words + k],
                              bits[static_cast<size_t>(pr) * words + k]);
            for (int i = 0; i < rows_; ++i) {
                if (i == r) continue;
                if (bits[static_cast<size_t>(i) * words + w] & m) {
                    uint64_t* dst = &bits[static_cast<size_t>(i) * words];
                    const uint64_t* src = &bits[static_cast<size_t>(r) * words];
                    for (int k = 0; k < words; ++k) dst[k] ^= src[k];
                }
            }
            if (pivots) pivots->emplace_back(r, c);
            ++r;
        }
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                at(i, j) = (bits[static_cast<size_t>(i) * words + j / 64] >> (j % 64)) & 1 ? 1 : 0;
        return r;
    }

    int rows_, cols_, p_;
    std::vector<uint8_t> a_;
};

struct Mat::Solve {
    bool ok = false;
    Mat x;
    std::vector<Mat> null_basis;
    Mat dual;
};

inline Mat::Solve Mat::solve(const Mat& b) const {
    check_field(b);
    if (b.rows() != rows_ || b.cols() != 1)
        throw std::invalid_argument("solve: right-hand side shape mismatch");
    // Augment [A | b | I] so an inconsistent row carries its own certificate.
    Mat g = hcat(b).hcat(identity(rows_, p_));
    std::vector<std::pair<int, int>> pivots; // (row, col) within A columns
    g.rref_in_place(cols_, &pivots);

    Solve out;
    std::vector<int> pivot_col_of(static_cast<size_t>(cols_), -1);
    std::vector<bool> is_pivot_row(static_cast<size_t>(rows_), false);
    for (auto& [r, c] : pivots) {
        pivot_col_of[static_cast<size_t>(c)] = r;
        is_pivot_row[static_cast<size_t>(r)] = true;
    }
    for (int r = 0; r < rows_; ++r) {
        if (is_pivot_row[static_cast<size_t>(r)]) continue;
        if (g.at(r, cols_) != 0) {
            out.ok = false;
            out.dual = g.submatrix(r, cols_ + 1, 1, rows_);
            return out;
        }
    }
    out.ok = true;
    out.x = Mat(cols_, 1, p_);
    for (auto& [r, c] : pivots) out.x.at(c, 0) = g.at(r, cols_);
    Field F(p_);
    for (int f = 0; f < cols_; ++f) {
        if (pivot_col_of[static_cast<size_t>(f)] >= 0) continue;
        Mat v(cols_, 1, p_);
        v.at(f, 0) = 1;
        for (auto& [r, c] : pivots) v.at(c, 0) = static_cast<uint8_t>(F.neg(g.at(r, f)));
        out.null_basis.push_back(std::move(v));
    }
    return out;
}

} // namespace ntri
