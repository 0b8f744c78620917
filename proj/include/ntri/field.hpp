#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ntri {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

// Arithmetic in GF(p), elements represented canonically in [0, p).
class Field {
public:
    explicit Field(int p = 2) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("field modulus must be prime");
        inv_.assign(p_, 0);
        for (int a = 1; a < p_; ++a)
            for (int b = 1; b < p_; ++b)
                if (a * b % p_ == 1) { inv_[a] = static_cast<uint8_t>(b); break; }
    }

    int p() const { return p_; }
    int reduce(long long v) const {
        int r = static_cast<int>(v % p_);
        return r < 0 ? r + p_ : r;
    }
    int add(int a, int b) const { int s = a + b; return s >= p_ ? s - p_ : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + p_ : s; }
    int mul(int a, int b) const { return a * b % p_; }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return inv_[a];
    }

    bool operator==(const Field& o) const { return p_ == o.p_; }

private:
    int p_;
    std::vector<uint8_t> inv_;
};

} // namespace ntri
