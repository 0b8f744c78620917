#pragma once

#include "ntri/document.hpp"
#include "ntri/generators.hpp"
#include "ntri/render.hpp"

#include <chrono>
#include <functional>

namespace ntri {

// Randomized verification of the axioms and the key theorems. Every case is
// generated into a DiagramDocument and evaluated from the document, so a
// failure dump is a standalone reproduction of the failing case.

struct CaseOutcome {
    Status result = Status::Yes; // Yes = pass, No = fail, Undetermined
    std::string note;
};

struct CheckResult {
    std::string name;
    int cases = 0, pass = 0, fail = 0, undetermined = 0;
    std::string first_failure_dump;
    std::string first_failure_note;
    double seconds = 0.0;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    int total_pass = 0, total_fail = 0, total_undetermined = 0;

    // CI tri-state: 0 clean, 1 any failure, 2 undetermined only
    int exit_code() const {
        if (total_fail > 0) return 1;
        if (total_undetermined > 0) return 2;
        return 0;
    }

    std::string to_text(bool with_time = true) const {
        std::ostringstream os;
        for (auto& c : checks) {
            os << (c.fail ? "FAIL " : (c.undetermined ? "UNDET" : "ok   ")) << " " << c.name
               << ": " << c.pass << "/" << c.cases << " pass";
            if (c.fail) os << ", " << c.fail << " fail";
            if (c.undetermined) os << ", " << c.undetermined << " undetermined";
            if (with_time) os << "  (" << std::fixed << std::setprecision(2) << c.seconds << "s)";
            if (!c.first_failure_note.empty()) os << "\n      first failure: " << c.first_failure_note;
            os << "\n";
        }
        os << "total: " << total_pass << " pass, " << total_fail << " fail, "
           << total_undetermined << " undetermined\n";
        return os.str();
    }
};

struct SuiteOptions {
    uint64_t seed = 1;
    int cases = 10;
    int n_max = 3;
    int p = 2;
    DeciderOptions dec;
    GenOptions gen;
};

namespace suitedetail {

inline GenOptions scaled(const GenOptions& g, int n) {
    GenOptions o = g;
    if (n >= 4) {
        o.max_dim = std::min(o.max_dim, 2);
        o.lo = std::max(o.lo, -1);
        o.hi = std::min(o.hi, 1);
    }
    return o;
}

// ---- per-check evaluators operating on documents ----

inline CaseOutcome eval_isomorphism(const DiagramDocument& doc, DeciderOptions dec) {
    TriangleMap g = doc.realize_dmap("G");
    VerdictMap v = check_map_full(g, dec);
    if (v.status == Status::Yes && v.cert->recheck()) return {Status::Yes, ""};
    if (v.status == Status::Undetermined) return {Status::Undetermined, v.note};
    return {Status::No, "isomorphism not certified distinguished"};
}

inline CaseOutcome check_all_two_faces(const NTriangle& t, DeciderOptions dec,
                                       const std::string& what) {
    int n = t.n();
    for (int x = 0; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y)
            for (int z = y + 1; z <= n; ++z) {
                Verdict2 v = check_distinguished_2(two_face(t, x, y, z), dec);
                if (v.status != Status::Yes)
                    return {v.status, what + ": 2-face not certified distinguished"};
            }
    return {Status::Yes, ""};
}

inline CaseOutcome eval_rotation(const DiagramDocument& doc, DeciderOptions dec) {
    NTriangle t = doc.realize_diagram("T");
    for (NTriangle r : {rotate_tau(t), rotate_sigma(t)}) {
        if (!verify_diagram(r, VerifyMode::Homotopy).pass())
            return {Status::No, "rotation broke commutativity"};
        CaseOutcome out = check_all_two_faces(r, dec, "rotation");
        if (out.result != Status::Yes) return out;
    }
    return {Status::Yes, ""};
}

inline CaseOutcome eval_faces(const DiagramDocument& doc, DeciderOptions dec) {
    TriangleMap g = doc.realize_dmap("G"); // a map of 3-triangles
    for (int i = 0; i <= 3; ++i) {
        VerdictMap v = check_map_full(face_pi_map(g, i), dec);
        if (v.status != Status::Yes)
            return {v.status, "face " + std::to_string(i) + " map not distinguished"};
    }
    // degeneracy of a face map is again distinguished on its 2-faces
    TriangleMap d = degenerate_map(face_pi_map(g, 0), 1);
    for (auto& tri : std::vector<std::array<int, 3>>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}) {
        VerdictMap v = check_map_full(two_face_map(d, tri[0], tri[1], tri[2]), dec);
        if (v.status != Status::Yes) return {v.status, "degeneracy face map not distinguished"};
    }
    return {Status::Yes, ""};
}

inline CaseOutcome eval_bases(const DiagramDocument& doc, DeciderOptions dec) {
    TriangleMap g = doc.realize_dmap("G");
    if (!verify_map(g, VerifyMode::Homotopy).pass())
        return {Status::No, "extended map does not commute up to homotopy"};
    int n = g.src.n();
    for (int x = 0; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y)
            for (int z = y + 1; z <= n; ++z) {
                VerdictMap v = check_map_full(two_face_map(g, x, y, z), dec);
                if (v.status != Status::Yes) return {v.status, "2-face map not distinguished"};
            }
    return {Status::Yes, ""};
}

inline CaseOutcome eval_lightning(const DiagramDocument& doc, DeciderOptions dec) {
    TriangleMap g1 = doc.realize_dmap("G1");
    TriangleMap g2 = doc.realize_dmap("G2");
    VerdictMap v1 = check_map_full(g1, dec), v2 = check_map_full(g2, dec);
    if (v1.status != Status::Yes || v2.status != Status::Yes)
        return {v1.status == Status::No || v2.status == Status::No ? Status::No
                                                                   : Status::Undetermined,
                "completions not certified distinguished"};
    auto d = lightning_difference(g1, g2);
    if (!d) return {Status::No, "no lightning strike relates the two completions"};
    return {Status::Yes, ""};
}

inline CaseOutcome eval_sum(const DiagramDocument& doc, DeciderOptions dec) {
    TriangleMap g1 = doc.realize_dmap("G1");
    TriangleMap g2 = doc.realize_dmap("G2");
    SumVerdicts sv = check_sum_theorem(g1, g2, dec);
    if (sv.g1.status == Status::Undetermined || sv.g2.status == Status::Undetermined ||
        sv.sum.status == Status::Undetermined)
        return {Status::Undetermined, "a verdict is undetermined"};
    if (!sv.consistent()) return {Status::No, "sum biconditional violated"};
    return {Status::Yes, ""};
}

inline CaseOutcome eval_neeman(const DiagramDocument& doc, DeciderOptions dec) {
    TriangleMap g = doc.realize_dmap("G");
    VerdictMap v = check_map_full(g, dec);
    VerdictMap vn = check_map_full(neeman_N(g), dec);
    VerdictMap vp = check_map_full(neeman_Nprime(g), dec);
    VerdictMap vpp = check_map_full(neeman_Ndoubleprime(g), dec);
    for (auto* w : {&v, &vn, &vp, &vpp})
        if (w->status == Status::Undetermined) return {Status::Undetermined, "undetermined verdict"};
    if (vn.status != v.status || vp.status != v.status || vpp.status != v.status)
        return {Status::No, "Neeman transform changed the verdict"};
    if (v.status == Status::Yes) {
        Verdict2 good = is_good(g, dec);
        if (good.status == Status::Undetermined)
            return {Status::Undetermined, "good-map decider undetermined"};
        if (good.status != Status::Yes) return {Status::No, "distinguished map is not good"};
    }
    return {Status::Yes, ""};
}

inline CaseOutcome eval_facecycle(const DiagramDocument& doc, DeciderOptions dec) {
    NTriangle t = doc.realize_diagram("T");
    FaceCycle fc = face_cycle(t);
    int n = t.n();
    for (auto& m : fc.maps) {
        if (!verify_map(m, VerifyMode::Homotopy).pass())
            return {Status::No, "face map does not commute"};
        if (n - 1 == 2) {
            VerdictMap v = check_map_full(m, dec);
            if (v.status != Status::Yes) return {v.status, "face map not distinguished"};
        } else {
            for (int x = 0; x <= n - 1; ++x)
                for (int y = x + 1; y <= n - 1; ++y)
                    for (int z = y + 1; z <= n - 1; ++z) {
                        VerdictMap v = check_map_full(two_face_map(m, x, y, z), dec);
                        if (v.status != Status::Yes)
                            return {v.status, "face map 2-face not distinguished"};
                    }
        }
    }
    return {Status::Yes, ""};
}

inline CaseOutcome eval_threebythree(const DiagramDocument& doc, DeciderOptions dec) {
    NTriangle row1 = doc.realize_diagram("row1");
    NTriangle row2 = doc.realize_diagram("row2");
    NTriangle col1 = doc.realize_diagram("col1");
    NTriangle col2 = doc.realize_diagram("col2");
    TriangleMap gcol = doc.realize_dmap("Gcol");
    TriangleMap grow = doc.realize_dmap("Grow");
    ThreeByThree d = complete_3x3(row1, row2, col1, col2, gcol, grow, dec);
    ThreeByThreeReport rep = verify_3x3(d, dec);
    if (rep.pass()) {
        if (tri_u(d.row[2]) != grow.at(VertexKey(1, 2)) ||
            tri_u(d.col[2]) != gcol.at(VertexKey(1, 2)))
            return {Status::No, "given maps were modified"};
        return {Status::Yes, ""};
    }
    for (auto s : rep.row_verdicts)
        if (s == Status::Undetermined) return {Status::Undetermined, "row verdict undetermined"};
    for (auto s : rep.col_verdicts)
        if (s == Status::Undetermined) return {Status::Undetermined, "column verdict undetermined"};
    return {Status::No, rep.first_failure.empty() ? "row or column not distinguished"
                                                  : rep.first_failure};
}

// ---- per-check generators producing documents ----

inline StandardBuild random_standard_build(Rng& rng, int p, int n, const GenOptions& g) {
    std::vector<ChainComplex> objs;
    for (int i = 0; i < n; ++i) objs.push_back(random_complex(p, rng.next(), g));
    std::vector<ChainMap> maps;
    for (int i = 0; i + 1 < n; ++i)
        maps.push_back(random_chain_map(rng.next(), objs[static_cast<size_t>(i)],
                                        objs[static_cast<size_t>(i) + 1]));
    return build_standard(maps);
}

inline DiagramDocument gen_isomorphism(Rng& rng, int p, const GenOptions& g, int nmax) {
    (void)nmax;
    NTriangle t = random_distinguished_2tri(p, rng.next(), g);
    Rng local = rng.fork(17);
    Conjugate ca = random_conjugate(local, tri_a(t));
    Conjugate cb = random_conjugate(local, tri_b(t));
    Conjugate cc = random_conjugate(local, tri_c(t));
    NTriangle t2 = make_2triangle(ca.y, cb.y, cc.y, cb.fwd.compose(tri_u(t)).compose(ca.bwd),
                                  cc.fwd.compose(tri_v(t)).compose(cb.bwd),
                                  ca.fwd.shift(1).compose(tri_w(t)).compose(cc.bwd));
    TriangleMap iso = make_map2(t, t2, ca.fwd, cb.fwd, cc.fwd);
    DiagramDocument doc;
    doc.field = p;
    doc.put_diagram("src", t);
    doc.put_diagram("tgt", t2);
    doc.put_dmap("G", iso, "src", "tgt");
    return doc;
}

inline DiagramDocument gen_rotation(Rng& rng, int p, const GenOptions& g, int nmax) {
    int n = 2 + rng.uniform(std::max(1, std::min(nmax, 4) - 1));
    DiagramDocument doc;
    doc.field = p;
    if (n == 2) doc.put_diagram("T", random_distinguished_2tri(p, rng.next(), g));
    else doc.put_diagram("T", random_standard_build(rng, p, n, scaled(g, n)).t);
    return doc;
}

inline TriangleMap random_standard_3map(Rng& rng, int p, const GenOptions& g) {
    for (int tries = 0; tries < 20; ++tries) {
        ChainComplex a1 = random_complex(p, rng.next(), g);
        ChainComplex a2 = random_complex(p, rng.next(), g);
        ChainComplex a3 = random_complex(p, rng.next(), g);
        StandardBuild s = build_standard({random_chain_map(rng.next(), a1, a2),
                                          random_chain_map(rng.next(), a2, a3)});
        ChainComplex b1 = random_complex(p, rng.next(), g);
        ChainComplex b2 = random_complex(p, rng.next(), g);
        ChainComplex b3 = random_complex(p, rng.next(), g);
        StandardBuild t = build_standard({random_chain_map(rng.next(), b1, b2),
                                          random_chain_map(rng.next(), b2, b3)});
        auto s1 = random_commuting_square(rng.next(), s.maps[0], t.maps[0]);
        if (!s1) continue;
        // third base component: solve g3 with g3 u2 ~ u2' f2 where f2 = s1->g
        auto s2 = random_commuting_square(rng.next(), s.maps[1], t.maps[1]);
        (void)s2;
        LinSys sys(p);
        int gi = sys.add_unknown(s.objs[2], t.objs[2], 0);
        int ki = sys.add_unknown(s.objs[1], t.objs[2], -1);
        sys.add_equation({LinSys::Term{gi, GradedMap::diff_map(t.objs[2]), std::nullopt, 1},
                          LinSys::Term{gi, std::nullopt, GradedMap::diff_map(s.objs[2]), -1}},
                         GradedMap::zero(s.objs[2], t.objs[2], 1));
        sys.add_equation({LinSys::Term{gi, std::nullopt, s.maps[1], 1},
                          LinSys::Term{ki, GradedMap::diff_map(t.objs[2]), std::nullopt, -1},
                          LinSys::Term{ki, std::nullopt, GradedMap::diff_map(s.objs[1]), -1}},
                         t.maps[1].compose(s1->g));
        auto out = sys.solve();
        if (!out.ok) continue;
        auto inst = out.sample(rng.next());
        return complete_base_map({s1->f, s1->g, inst[gi]}, s, t);
    }
    throw std::logic_error("could not sample a base map of 3-triangles");
}

inline DiagramDocument gen_faces(Rng& rng, int p, const GenOptions& g, int nmax) {
    (void)nmax;
    TriangleMap m = random_standard_3map(rng, p, scaled(g, 4));
    DiagramDocument doc;
    doc.field = p;
    doc.put_diagram("src", m.src);
    doc.put_diagram("tgt", m.tgt);
    doc.put_dmap("G", m, "src", "tgt");
    return doc;
}

inline DiagramDocument gen_bases(Rng& rng, int p, const GenOptions& g, int nmax) {
    if (nmax >= 3 && rng.uniform(2) == 1) return gen_faces(rng, p, g, nmax);
    // n = 2 instance: complete a base map between standard 2-triangles
    for (int tries = 0; tries < 20; ++tries) {
        StandardBuild s2 = random_standard_build(rng, p, 2, g);
        StandardBuild t2 = random_standard_build(rng, p, 2, g);
        auto sq = random_commuting_square(rng.next(), s2.maps[0], t2.maps[0]);
        if (!sq) continue;
        TriangleMap m = complete_base_map({sq->f, sq->g}, s2, t2);
        DiagramDocument doc;
        doc.field = p;
        doc.put_diagram("src", m.src);
        doc.put_diagram("tgt", m.tgt);
        doc.put_dmap("G", m, "src", "tgt");
        return doc;
    }
    throw std::logic_error("could not sample a base map");
}

inline DiagramDocument gen_lightning(Rng& rng, int p, const GenOptions& g, int nmax) {
    (void)nmax;
    RandomMap2 rm = random_distinguished_map2(p, rng.next(), g);
    ChainMap tau = random_chain_map(rng.next(), tri_a(rm.map.src).shift(1), tri_b(rm.map.tgt));
    TriangleMap g2 = apply_lightning(rm.map, tau);
    DiagramDocument doc;
    doc.field = p;
    doc.put_diagram("src", rm.map.src);
    doc.put_diagram("tgt", rm.map.tgt);
    doc.put_dmap("G1", rm.map, "src", "tgt");
    doc.put_dmap("G2", g2, "src", "tgt");
    return doc;
}

inline DiagramDocument gen_sum(Rng& rng, int p, const GenOptions& g, int nmax) {
    (void)nmax;
    RandomMap2 g1 = random_distinguished_map2(p, rng.next(), g);
    RandomMap2 g2 = random_distinguished_map2(p, rng.next(), g);
    DiagramDocument doc;
    doc.field = p;
    doc.put_diagram("src1", g1.map.src);
    doc.put_diagram("tgt1", g1.map.tgt);
    doc.put_diagram("src2", g2.map.src);
    doc.put_diagram("tgt2", g2.map.tgt);
    doc.put_dmap("G1", g1.map, "src1", "tgt1");
    doc.put_dmap("G2", g2.map, "src2", "tgt2");
    return doc;
}

inline DiagramDocument gen_neeman(Rng& rng, int p, const GenOptions& g, int nmax) {
    (void)nmax;
    RandomMap2 rm = random_distinguished_map2(p, rng.next(), g);
    TriangleMap m = rm.map;
    if (rng.uniform(2) == 1) {
        // perturb h by a random chain map: the verdict may flip to No, and
        // the Neeman transforms must follow it
        ChainMap pert = random_chain_map(rng.next(), tri_c(m.src), tri_c(m.tgt));
        m.comp.at(VertexKey(1, 2)) = m.at(VertexKey(1, 2)).add(pert);
    }
    DiagramDocument doc;
    doc.field = p;
    doc.put_diagram("src", m.src);
    doc.put_diagram("tgt", m.tgt);
    doc.put_dmap("G", m, "src", "tgt");
    return doc;
}

inline DiagramDocument gen_facecycle(Rng& rng, int p, const GenOptions& g, int nmax) {
    int n = nmax >= 4 && rng.uniform(2) == 1 ? 4 : 3;
    StandardBuild s = random_standard_build(rng, p, n, scaled(g, 4));
    DiagramDocument doc;
    doc.field = p;
    doc.put_diagram("T", s.t);
    return doc;
}

inline DiagramDocument gen_threebythree(Rng& rng, int p, const GenOptions& g, int nmax) {
    (void)nmax;
    GenOptions go = scaled(g, 4);
    for (int tries = 0; tries < 20; ++tries) {
        ChainComplex a = random_complex(p, rng.next(), go);
        ChainComplex b = random_complex(p, rng.next(), go);
        ChainComplex ap = random_complex(p, rng.next(), go);
        ChainComplex bp = random_complex(p, rng.next(), go);
        ChainMap u = random_chain_map(rng.next(), a, b);
        ChainMap f = random_chain_map(rng.next(), a, ap);
        // solve (u', g) to close the corner square
        LinSys sys(p);
        int upi = sys.add_unknown(ap, bp, 0);
        int gi = sys.add_unknown(b, bp, 0);
        int ki = sys.add_unknown(a, bp, -1);
        sys.add_equation({LinSys::Term{upi, GradedMap::diff_map(bp), std::nullopt, 1},
                          LinSys::Term{upi, std::nullopt, GradedMap::diff_map(ap), -1}},
                         GradedMap::zero(ap, bp, 1));
        sys.add_equation({LinSys::Term{gi, GradedMap::diff_map(bp), std::nullopt, 1},
                          LinSys::Term{gi, std::nullopt, GradedMap::diff_map(b), -1}},
                         GradedMap::zero(b, bp, 1));
        sys.add_equation({LinSys::Term{gi, std::nullopt, u, 1},
                          LinSys::Term{upi, std::nullopt, f, -1},
                          LinSys::Term{ki, GradedMap::diff_map(bp), std::nullopt, -1},
                          LinSys::Term{ki, std::nullopt, GradedMap::diff_map(a), -1}},
                         GradedMap::zero(a, bp, 0));
        auto sol = sys.solve();
        if (!sol.ok) continue;
        auto inst = sol.sample(rng.next());
        StandardBuild row1 = standard_2triangle(u);
        StandardBuild row2 = standard_2triangle(inst[upi]);
        StandardBuild col1 = standard_2triangle(f);
        StandardBuild col2 = standard_2triangle(inst[gi]);
        TriangleMap gcol = complete_base_map({f, inst[gi]}, row1, row2);
        TriangleMap grow = complete_base_map({u, inst[upi]}, col1, col2);
        DiagramDocument doc;
        doc.field = p;
        doc.put_diagram("row1", row1.t);
        doc.put_diagram("row2", row2.t);
        doc.put_diagram("col1", col1.t);
        doc.put_diagram("col2", col2.t);
        doc.put_dmap("Gcol", gcol, "row1", "row2");
        doc.put_dmap("Grow", grow, "col1", "col2");
        return doc;
    }
    throw std::logic_error("could not sample a 3x3 corner");
}

struct CheckSpec {
    std::string name;
    std::function<DiagramDocument(Rng&, int, const GenOptions&, int)> generate;
    std::function<CaseOutcome(const DiagramDocument&, DeciderOptions)> evaluate;
};

inline const std::vector<CheckSpec>& registry() {
    static const std::vector<CheckSpec> specs = {
        {"isomorphism", gen_isomorphism, eval_isomorphism},
        {"rotation", gen_rotation, eval_rotation},
        {"faces", gen_faces, eval_faces},
        {"bases", gen_bases, eval_bases},
        {"lightning", gen_lightning, eval_lightning},
        {"sum", gen_sum, eval_sum},
        {"neeman", gen_neeman, eval_neeman},
        {"facecycle", gen_facecycle, eval_facecycle},
        {"threebythree", gen_threebythree, eval_threebythree},
    };
    return specs;
}

} // namespace suitedetail

// Runs every named check `cases` times at the given scale; deterministic in
// (seed, cases, n_max, p) up to the timing fields.
inline SuiteReport axiom_suite(SuiteOptions opt = {}) {
    SuiteReport report;
    for (auto& spec : suitedetail::registry()) {
        CheckResult res;
        res.name = spec.name;
        auto t0 = std::chrono::steady_clock::now();
        for (int c = 0; c < opt.cases; ++c) {
            Rng rng(opt.seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(c) * 1299709 +
                    std::hash<std::string>{}(spec.name));
            CaseOutcome out;
            DiagramDocument doc;
            try {
                doc = spec.generate(rng, opt.p, opt.gen, opt.n_max);
                doc.meta["check"] = spec.name;
                doc.meta["case"] = std::to_string(c);
                out = spec.evaluate(doc, opt.dec);
            } catch (const std::exception& e) {
                out = {Status::No, std::string("exception: ") + e.what()};
            }
            ++res.cases;
            if (out.result == Status::Yes) ++res.pass;
            else if (out.result == Status::Undetermined) ++res.undetermined;
            else {
                ++res.fail;
                if (res.first_failure_dump.empty()) {
                    res.first_failure_dump = serialize_document(doc);
                    res.first_failure_note = out.note;
                }
            }
        }
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.total_pass += res.pass;
        report.total_fail += res.fail;
        report.total_undetermined += res.undetermined;
        report.checks.push_back(std::move(res));
    }
    return report;
}

// Re-runs the named check of a failure dump; the document carries its own
// check name in the meta section.
inline CaseOutcome replay_check(const DiagramDocument& doc, DeciderOptions dec = {}) {
    auto it = doc.meta.find("check");
    if (it == doc.meta.end()) throw std::invalid_argument("document carries no check meta entry");
    for (auto& spec : suitedetail::registry())
        if (spec.name == it->second) return spec.evaluate(doc, dec);
    throw std::invalid_argument("unknown check: " + it->second);
}

} // namespace ntri
