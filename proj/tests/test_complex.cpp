#include "doctest.h"
#include "ntri/complex.hpp"
#include "ntri/generators.hpp"

using namespace ntri;

namespace {

ChainComplex two_term(int p, int lo, const Mat& d) {
    ChainComplex c(p);
    c.set_dim(lo, d.cols());
    c.set_dim(lo + 1, d.rows());
    c.set_diff(lo, d);
    return c;
}

} // namespace

TEST_CASE("validate_complex") {
    ChainComplex zeros(2);
    zeros.set_dim(0, 2);
    zeros.set_dim(1, 1);
    CHECK_FALSE(zeros.validate());

    // d = 1 twice over GF(2): violation at the middle degree
    ChainComplex bad(2);
    bad.set_dim(0, 1);
    bad.set_dim(1, 1);
    bad.set_dim(2, 1);
    bad.set_diff(0, Mat::identity(1, 2));
    bad.set_diff(1, Mat::identity(1, 2));
    auto v = bad.validate();
    REQUIRE(v.has_value());
    CHECK(v->degree == 0);

    for (uint64_t seed : {1ULL, 7ULL, 42ULL}) {
        ChainComplex c = random_complex(2, seed);
        CHECK_FALSE(c.validate());
        ChainComplex c3 = random_complex(3, seed);
        CHECK_FALSE(c3.validate());
    }
}

TEST_CASE("shift") {
    ChainComplex c = two_term(3, 0, Mat::from_rows({{2}}, 3));
    CHECK(c.shift(0) == c);
    // GF(3) complex with d = [2]: shift by 1 gives d = [1]
    ChainComplex s = c.shift(1);
    CHECK(s.dim(-1) == 1);
    CHECK(s.diff(-1) == Mat::from_rows({{1}}, 3));
    // shifts compose additively, signs included
    CHECK(c.shift(1).shift(1) == c.shift(2));
    CHECK(c.shift(2).diff(-2) == Mat::from_rows({{2}}, 3));
    CHECK(c.shift(1).shift(-1) == c);

    ChainMap id = ChainMap::identity(c);
    CHECK(id.shift(1).shift(-1) == id);
}

TEST_CASE("direct sums and chain map algebra") {
    ChainComplex c = random_complex(2, 5);
    ChainComplex zero = ChainComplex::zero(2);
    CHECK(c.direct_sum(zero) == c);

    ChainComplex d = random_complex(2, 6);
    ChainMap f = random_chain_map(11, c, d);
    CHECK(f.is_chain());
    ChainMap idc = ChainMap::identity(c);
    CHECK(f.compose(idc) == f);
    CHECK(ChainMap::identity(d).compose(f) == f);
    CHECK(f.add(f.negate()).is_zero());
    CHECK(f.sub(f).is_zero());

    // direct sum of maps acts blockwise and commutes with shift
    ChainMap g = random_chain_map(12, c, d);
    CHECK(f.direct_sum(g).shift(1) == f.shift(1).direct_sum(g.shift(1)));
}

TEST_CASE("random generators are deterministic and valid") {
    for (int p : {2, 3, 5}) {
        ChainComplex a = random_complex(p, 7);
        ChainComplex b = random_complex(p, 7);
        CHECK(a == b);
        CHECK_FALSE(a.validate());
        ChainComplex c = random_complex(p, 8);
        ChainMap f = random_chain_map(3, a, c);
        ChainMap g = random_chain_map(3, a, c);
        CHECK(f == g);
        CHECK(f.is_chain());
    }
    // seed 0, max_dim 0 -> zero complex
    GenOptions opt;
    opt.max_dim = 0;
    CHECK(random_complex(2, 0, opt).is_zero_object());
}

TEST_CASE("homotopy boundary identity") {
    ChainComplex a = random_complex(2, 21);
    ChainComplex b = random_complex(2, 22);
    Rng rng(77);
    GradedMap h(a, b, -1);
    for (auto& [n, dim] : a.dims()) {
        (void)dim;
        if (b.dim(n - 1) == 0) continue;
        h.set(n, random_matrix(rng, b.dim(n - 1), a.dim(n), 2));
    }
    GradedMap bound = homotopy_boundary(h);
    CHECK(bound.deg() == 0);
    // d h + h d is always a chain map
    CHECK(bound.is_chain());
}
