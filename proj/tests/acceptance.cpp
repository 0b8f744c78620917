// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Scales and tolerances are pinned here; every numeric check is exact.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ntri/suite.hpp"

#include <iostream>

using namespace ntri;

namespace {

struct Line {
    const char* id = "";
    bool ok = true;
    std::string detail = {};
    ~Line() {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << id;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << std::endl;
    }
};

GenOptions desk_scale() {
    GenOptions g;
    g.max_dim = 3;
    g.lo = -3;
    g.hi = 3;
    return g;
}

GenOptions medium_scale() {
    GenOptions g;
    g.max_dim = 2;
    g.lo = -2;
    g.hi = 2;
    return g;
}

GenOptions small_scale() {
    GenOptions g;
    g.max_dim = 2;
    g.lo = -1;
    g.hi = 1;
    return g;
}

StandardBuild random_standard_n(int p, int n, uint64_t seed, GenOptions opt) {
    Rng rng(seed);
    std::vector<ChainComplex> objs;
    for (int i = 0; i < n; ++i) objs.push_back(random_complex(p, rng.next(), opt));
    std::vector<ChainMap> maps;
    for (int i = 0; i + 1 < n; ++i) maps.push_back(random_chain_map(rng.next(), objs[i], objs[i + 1]));
    return build_standard(maps);
}

} // namespace

TEST_CASE("criterion 1: combinatorial counts, exact") {
    Line line{"C1 combinatorics n=2..6"};
    for (int n = 2; n <= 6; ++n) {
        RectifiedShape s{n};
        auto lattice = face_lattice_counts(n);
        bool ok = static_cast<long long>(s.vertices().size()) == binom(n + 1, 2) &&
                  static_cast<long long>(s.edges().size()) == binom(n + 1, 2) * (n - 1) &&
                  lattice[0] == binom(n + 1, 2) && lattice[1] == binom(n + 1, 2) * (n - 1) &&
                  counts(n).simplex_facets == n + 1 && counts(n).rectified_facets == n + 1;
        if (n >= 3) ok = ok && lattice[n - 1] == 2 * (n + 1);
        CHECK(ok);
        line.ok = line.ok && ok;
    }
    // the item-(3) discrepancy is reported, not asserted
    auto l3 = face_lattice_counts(3);
    std::ostringstream os;
    os << "item-(3) formula at n=3: i=0 gives " << binom(4, 1) * 4 << " vs enumerated " << l3[0]
       << ", i=1 gives " << binom(4, 2) * 3 << " vs enumerated " << l3[1];
    line.detail = os.str();
}

TEST_CASE("criterion 2: model sanity, zero failures") {
    Line line{"C2 model sanity"};
    GenOptions g = desk_scale();
    int d2_ok = 0;
    for (uint64_t s = 0; s < 500; ++s) {
        int p = s % 5 == 0 ? 3 : 2;
        if (!random_complex(p, s, g).validate()) ++d2_ok;
    }
    CHECK(d2_ok == 500);
    int cone_ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        ChainComplex x = random_complex(2, 7000 + s, g);
        Cone c = mapping_cone(ChainMap::identity(x));
        if (is_exact(c.c) && is_contractible(c.c).has_value()) ++cone_ok;
    }
    CHECK(cone_ok == 100);
    int agree = 0;
    for (uint64_t s = 0; s < 500; ++s) {
        int p = s % 3 == 0 ? 3 : 2;
        ChainComplex c = random_complex(p, 9000 + s, g);
        if (is_exact(c) == is_contractible(c).has_value()) ++agree;
    }
    CHECK(agree == 500);
    line.ok = d2_ok == 500 && cone_ok == 100 && agree == 500;
    line.detail = "500 d2=0, 100 cone(id), 500 exact<=>contractible";
}

TEST_CASE("criterion 3: standard builder, strict + all faces certified") {
    Line line{"C3 standard builder n=2..5"};
    int undetermined = 0, fails = 0, total_faces = 0;
    for (int n = 2; n <= 5; ++n) {
        GenOptions g = n <= 3 ? medium_scale() : small_scale();
        for (uint64_t s = 0; s < 100; ++s) {
            StandardBuild sb = random_standard_n(2, n, 100000 + 977 * static_cast<uint64_t>(n) + s, g);
            auto rep = verify_diagram(sb.t, VerifyMode::Strict);
            if (!rep.pass() || !rep.all_strict()) {
                ++fails;
                continue;
            }
            for (int x = 0; x <= n; ++x)
                for (int y = x + 1; y <= n; ++y)
                    for (int z = y + 1; z <= n; ++z) {
                        ++total_faces;
                        Verdict2 v = check_distinguished_2(two_face(sb.t, x, y, z));
                        if (v.status == Status::Undetermined) ++undetermined;
                        else if (v.status != Status::Yes) ++fails;
                        else if (!v.cert->recheck()) ++fails;
                    }
        }
    }
    CHECK(fails == 0);
    CHECK(undetermined == 0);
    line.ok = fails == 0 && undetermined == 0;
    line.detail = std::to_string(total_faces) + " face verdicts, 0 undetermined at default budget";
}

TEST_CASE("criterion 4: rotation identities, bit-exact") {
    Line line{"C4 rotation identities"};
    int checked = 0;
    bool ok = true;
    for (int n = 2; n <= 4; ++n) {
        GenOptions g = n <= 3 ? medium_scale() : small_scale();
        for (uint64_t s = 0; s < 50; ++s) {
            StandardBuild sb = random_standard_n(2, n, 200000 + 977 * static_cast<uint64_t>(n) + s, g);
            NTriangle lhs = sb.t;
            for (int i = 0; i <= n; ++i) lhs = rotate_tau(lhs);
            NTriangle rhs = sb.t;
            for (int i = 0; i + 1 < n; ++i) rhs = rotate_sigma(rhs);
            bool here = lhs == rhs &&
                        rotate_sigma(rotate_sigma(sb.t)) == diagram_shift(sb.t, 2);
            CHECK(here);
            ok = ok && here;
            ++checked;
        }
    }
    // sigma^2 = [2] holds over every supported field
    for (int p : {3, 5}) {
        StandardBuild sb = random_standard_n(p, 3, 201000 + static_cast<uint64_t>(p), small_scale());
        bool here = rotate_sigma(rotate_sigma(sb.t)) == diagram_shift(sb.t, 2);
        CHECK(here);
        ok = ok && here;
    }
    line.ok = ok;
    line.detail = std::to_string(checked) + " triangles, GF(2); sigma^2=[2] also at GF(3),GF(5)";
}

TEST_CASE("criterion 5: sum theorem") {
    Line line{"C5 sum theorem"};
    GenOptions g = medium_scale();
    int both_yes_sum_yes = 0, consistent = 0, undet = 0, corollary_ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        RandomMap2 g1 = random_distinguished_map2(2, 300000 + 2 * s, g);
        RandomMap2 g2 = random_distinguished_map2(2, 300001 + 2 * s, g);
        SumVerdicts sv = check_sum_theorem(g1.map, g2.map);
        if (sv.g1.status == Status::Undetermined || sv.g2.status == Status::Undetermined ||
            sv.sum.status == Status::Undetermined) {
            ++undet;
            continue;
        }
        if (sv.consistent()) ++consistent;
        if (sv.g1.status == Status::Yes && sv.g2.status == Status::Yes &&
            sv.sum.status == Status::Yes)
            ++both_yes_sum_yes;
        // corollary: the pointwise sum of two distinguished maps of the same
        // two triangles is distinguished
        TriangleMap g1b = apply_lightning(
            g1.map, random_chain_map(400000 + s, tri_a(g1.map.src).shift(1), tri_b(g1.map.tgt)));
        std::map<VertexKey, ChainMap> plus;
        for (auto& [v, c] : g1.map.comp) plus.emplace(v, c.add(g1b.at(v)));
        if (check_map_full(make_triangle_map(g1.map.src, g1.map.tgt, std::move(plus))).status ==
            Status::Yes)
            ++corollary_ok;
    }
    CHECK(both_yes_sum_yes + undet == 100);
    CHECK(consistent + undet == 100);
    CHECK(corollary_ok == 100);
    CHECK(undet == 0);
    line.ok = both_yes_sum_yes == 100 && consistent == 100 && corollary_ok == 100 && undet == 0;
    line.detail = "100 instances, biconditional on all determined verdicts, corollary 100/100";
}

TEST_CASE("criterion 6: lightning class") {
    Line line{"C6 lightning class"};
    GenOptions g = medium_scale();
    int preserved = 0, connected = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        int p = s % 10 == 9 ? 3 : 2; // every tenth instance over GF(3)
        RandomMap2 rm = random_distinguished_map2(p, 500000 + s, p == 3 ? small_scale() : g);
        Rng rng(600000 + s);
        ChainMap tau = random_chain_map(rng.next(), tri_a(rm.map.src).shift(1), tri_b(rm.map.tgt));
        TriangleMap struck = apply_lightning(rm.map, tau);
        // plus a null-homotopic perturbation: stays in the same class
        GradedMap pert(tri_c(rm.map.src), tri_c(rm.map.tgt), -1);
        struck.comp.at(VertexKey(1, 2)) =
            struck.at(VertexKey(1, 2)).add(homotopy_boundary(pert));
        if (check_distinguished_map_2(struck, rm.cert_src, rm.cert_tgt).status == Status::Yes)
            ++preserved;
        if (lightning_difference(rm.map, struck).has_value()) ++connected;
    }
    CHECK(preserved == 100);
    CHECK(connected == 100);
    line.ok = preserved == 100 && connected == 100;
    line.detail = "apply preserves Yes 100/100; difference solvable 100/100";
}

TEST_CASE("criterion 7: Neeman maps and goodness") {
    Line line{"C7 Neeman maps"};
    GenOptions g = medium_scale();
    int agree = 0, good = 0, yes_count = 0, determined = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        RandomMap2 rm = random_distinguished_map2(2, 700000 + s, g);
        TriangleMap m = rm.map;
        if (s % 2 == 1) {
            // half the corpus gets a perturbed third component
            ChainMap pert = random_chain_map(800000 + s, tri_c(m.src), tri_c(m.tgt));
            m.comp.at(VertexKey(1, 2)) = m.at(VertexKey(1, 2)).add(pert);
        }
        VerdictMap v = check_map_full(m);
        VerdictMap vn = check_map_full(neeman_N(m));
        VerdictMap vp = check_map_full(neeman_Nprime(m));
        VerdictMap vpp = check_map_full(neeman_Ndoubleprime(m));
        if (v.status == Status::Undetermined || vn.status == Status::Undetermined ||
            vp.status == Status::Undetermined || vpp.status == Status::Undetermined)
            continue;
        ++determined;
        if (vn.status == v.status && vp.status == v.status && vpp.status == v.status) ++agree;
        if (v.status == Status::Yes) {
            ++yes_count;
            if (is_good(m).status == Status::Yes) ++good;
        }
    }
    CHECK(determined == 100);
    CHECK(agree == 100);
    CHECK(good == yes_count);
    line.ok = determined == 100 && agree == 100 && good == yes_count;
    line.detail = "verdict agreement on " + std::to_string(determined) +
                  " determined instances; distinguished => good " + std::to_string(good) + "/" +
                  std::to_string(yes_count);
}

TEST_CASE("criterion 8: the distinguished 5-triangle") {
    Line line{"C8 five-triangle"};
    GenOptions g = small_scale();
    int built_ok = 0, faces_ok = 0;
    for (uint64_t s = 0; s < 50; ++s) {
        Rng rng(900000 + s);
        NTriangle t1 = random_distinguished_2tri(2, rng.next(), g);
        NTriangle t2 = random_distinguished_2tri(2, rng.next(), g);
        Verdict2 v1 = check_distinguished_2(t1), v2 = check_distinguished_2(t2);
        REQUIRE(v1.status == Status::Yes);
        REQUIRE(v2.status == Status::Yes);
        BuiltN five = build_five_triangle(*v1.cert, *v2.cert);
        if (verify_diagram(five.t, VerifyMode::Homotopy).pass()) ++built_ok;
        bool all = true;
        for (auto& f : five_triangle_faces())
            if (check_distinguished_2(two_face(five.t, f[0], f[1], f[2])).status != Status::Yes)
                all = false;
        if (all) ++faces_ok;
    }
    CHECK(built_ok == 50);
    CHECK(faces_ok == 50);
    line.ok = built_ok == 50 && faces_ok == 50;
    line.detail = "50 pairs; ten 2-faces certified each";
}

TEST_CASE("criterion 9: face cycles") {
    Line line{"C9 face cycles"};
    GenOptions g = small_scale();
    int ok3 = 0, ok4 = 0;
    for (uint64_t s = 0; s < 50; ++s) {
        StandardBuild sb = random_standard_n(2, 3, 1000000 + s, g);
        FaceCycle fc = face_cycle(sb.t);
        bool all = true;
        for (auto& m : fc.maps)
            if (check_map_full(m).status != Status::Yes) all = false;
        if (all) ++ok3;
    }
    for (uint64_t s = 0; s < 20; ++s) {
        StandardBuild sb = random_standard_n(2, 4, 1100000 + s, g);
        FaceCycle fc = face_cycle(sb.t);
        bool all = true;
        for (auto& m : fc.maps)
            for (int x = 0; x <= 3 && all; ++x)
                for (int y = x + 1; y <= 3 && all; ++y)
                    for (int z = y + 1; z <= 3 && all; ++z)
                        if (check_map_full(two_face_map(m, x, y, z)).status != Status::Yes)
                            all = false;
        if (all) ++ok4;
    }
    CHECK(ok3 == 50);
    CHECK(ok4 == 20);
    line.ok = ok3 == 50 && ok4 == 20;
    line.detail = "50 built 3-triangles, 20 built 4-triangles";
}

TEST_CASE("criterion 10: strong 3x3 completion") {
    Line line{"C10 strong 3x3"};
    GenOptions g = small_scale();
    int ok = 0;
    for (uint64_t s = 0; s < 50; ++s) {
        Rng rng(1200000 + s);
        DiagramDocument doc = suitedetail::gen_threebythree(rng, 2, g, 2);
        CaseOutcome out = suitedetail::eval_threebythree(doc, DeciderOptions{});
        if (out.result == Status::Yes) ++ok;
        else if (line.detail.empty()) line.detail = out.note;
    }
    CHECK(ok == 50);
    line.ok = ok == 50;
    if (line.ok)
        line.detail = "50 seeded corners: rows/cols certified, 12 squares, marked square "
                      "anti-commutes, inputs unmodified";
}

TEST_CASE("criterion 11: witness integrity") {
    Line line{"C11 witness integrity"};
    GenOptions g = small_scale();
    int yes_recheck = 0, yes_total = 0;
    for (uint64_t s = 0; s < 40; ++s) {
        NTriangle t = random_distinguished_2tri(2, 1300000 + s, g);
        Verdict2 v = check_distinguished_2(t);
        if (v.status == Status::Yes) {
            ++yes_total;
            if (v.cert->recheck()) ++yes_recheck;
        }
        RandomMap2 rm = random_distinguished_map2(2, 1400000 + s, g);
        VerdictMap vm = check_distinguished_map_2(rm.map, rm.cert_src, rm.cert_tgt);
        if (vm.status == Status::Yes) {
            ++yes_total;
            if (vm.cert->recheck()) ++yes_recheck;
        }
    }
    // No witnesses recheck by duality
    int no_recheck = 0, no_total = 0;
    {
        ChainComplex x = ChainComplex::concentrated(2, 0, 1);
        ChainComplex zero = ChainComplex::zero(2);
        for (uint64_t s = 0; s < 20; ++s) {
            ChainComplex pad = random_complex(2, 1500000 + s, g);
            ChainComplex big = x.direct_sum(pad);
            NTriangle bad = make_2triangle(big, zero, zero, ChainMap::zero(big, zero),
                                           ChainMap::zero(zero, zero),
                                           ChainMap::zero(zero, big.shift(1)));
            Verdict2 v = check_distinguished_2(bad);
            if (v.status == Status::No) {
                ++no_total;
                if (v.no->recheck()) ++no_recheck;
            }
        }
    }
    // suite failure dumps reproduce on reload
    int dump_ok = 0, dump_total = 0;
    for (uint64_t s = 0; s < 10; ++s) {
        Rng rng(1600000 + s);
        DiagramDocument doc = suitedetail::gen_lightning(rng, 2, GenOptions{}, 2);
        doc.meta["check"] = "lightning";
        auto& dm = doc.dmaps.at("G2");
        doc.maps.at(dm.vertex.at(VertexKey(1, 2))).at.clear(); // corrupt
        CaseOutcome first = replay_check(doc);
        if (first.result == Status::Yes) continue;
        ++dump_total;
        DiagramDocument back = parse_document(serialize_document(doc));
        if (replay_check(back).result == first.result) ++dump_ok;
    }
    CHECK(yes_recheck == yes_total);
    CHECK(yes_total == 80);
    CHECK(no_recheck == no_total);
    CHECK(no_total == 20);
    CHECK(dump_ok == dump_total);
    CHECK(dump_total > 0);
    line.ok = yes_recheck == yes_total && yes_total == 80 && no_recheck == no_total &&
              no_total == 20 && dump_ok == dump_total && dump_total > 0;
    line.detail = std::to_string(yes_total) + " Yes witnesses re-checked arithmetically, " +
                  std::to_string(no_total) + " No duals, " + std::to_string(dump_total) +
                  " dumps reproduced";
}
