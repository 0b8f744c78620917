// Command line front end: builds, checks and renders n-triangle diagrams
// stored in the ntri-doc text format. One verb per construction; exit codes
// are 0 (clean), 1 (a check failed), 2 (undetermined only), 3 (input error).

#include "CLI11.hpp"

#include "ntri/suite.hpp"

#include <fstream>
#include <iostream>

using namespace ntri;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFail = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitInput = 3;

DiagramDocument load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

void save(const std::string& path, const DiagramDocument& doc) {
    if (path == "-") {
        std::cout << serialize_document(doc);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << serialize_document(doc);
}

int status_exit(Status s) {
    switch (s) {
        case Status::Yes: return kExitClean;
        case Status::No: return kExitFail;
        default: return kExitUndetermined;
    }
}

VerifyMode parse_mode(const std::string& mode) {
    if (mode == "strict") return VerifyMode::Strict;
    if (mode == "homotopy") return VerifyMode::Homotopy;
    throw std::invalid_argument("mode must be strict or homotopy");
}

struct CommonFlags {
    int field = 2;
    uint64_t seed = 1;
    int budget = 64;
    std::string mode = "homotopy";
};

DeciderOptions decider(const CommonFlags& f) {
    DeciderOptions d;
    d.budget = f.budget;
    d.seed = f.seed ^ 0x5eed;
    return d;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"n-triangle diagrams in the homotopy category of bounded complexes over GF(p)"};
    app.require_subcommand(1);

    CommonFlags flags;
    app.add_option("--field", flags.field, "prime field modulus (default 2)");
    app.add_option("--seed", flags.seed, "seed for generators and samplers");
    app.add_option("--budget", flags.budget, "decider sampling budget");
    app.add_option("--mode", flags.mode, "verification mode: strict|homotopy");

    // verify
    auto* verify = app.add_subcommand("verify", "verify a diagram's commutativity conditions");
    std::string v_in, v_name = "T";
    verify->add_option("--in", v_in, "input document")->required();
    verify->add_option("--diagram", v_name, "diagram name (default T)");

    // build-standard
    auto* bstd = app.add_subcommand("build-standard", "build the standard n-triangle on a base");
    std::string b_in, b_out = "-", b_maps;
    int b_n = 2;
    bstd->add_option("--in", b_in, "document holding the base maps (optional)");
    bstd->add_option("--maps", b_maps, "comma-separated base map names (with --in)");
    bstd->add_option("--n", b_n, "dimension for random generation (without --in)");
    bstd->add_option("--out", b_out, "output document (default stdout)");

    // cone
    auto* cone = app.add_subcommand("cone", "mapping cone of a named map");
    std::string c_in, c_map, c_out = "-";
    cone->add_option("--in", c_in)->required();
    cone->add_option("--map", c_map, "map name")->required();
    cone->add_option("--out", c_out);

    // check-2tri
    auto* c2 = app.add_subcommand("check-2tri", "decide distinguishedness of a 2-triangle");
    std::string c2_in, c2_name = "T";
    c2->add_option("--in", c2_in)->required();
    c2->add_option("--diagram", c2_name);

    // check-map
    auto* cm = app.add_subcommand("check-map", "decide distinguishedness of a map of 2-triangles");
    std::string cm_in, cm_name = "G";
    cm->add_option("--in", cm_in)->required();
    cm->add_option("--dmap", cm_name);

    // check-good
    auto* cg = app.add_subcommand("check-good", "decide whether a map of 2-triangles is good");
    std::string cg_in, cg_name = "G";
    cg->add_option("--in", cg_in)->required();
    cg->add_option("--dmap", cg_name);

    // lightning
    auto* li = app.add_subcommand("lightning", "relate or modify completions by lightning strikes");
    std::string li_in, li_g1 = "G1", li_g2 = "G2", li_apply, li_out = "-";
    li->add_option("--in", li_in)->required();
    li->add_option("--dmap1", li_g1);
    li->add_option("--dmap2", li_g2);
    li->add_option("--apply", li_apply, "apply the named map as a strike to dmap1; writes --out");
    li->add_option("--out", li_out);

    // neeman
    auto* ne = app.add_subcommand("neeman", "compare verdicts across the Neeman transforms");
    std::string ne_in, ne_name = "G";
    ne->add_option("--in", ne_in)->required();
    ne->add_option("--dmap", ne_name);

    // five-tri
    auto* fv = app.add_subcommand("five-tri", "build the 5-triangle on two distinguished 2-triangles");
    std::string fv_in, fv_t1 = "T1", fv_t2 = "T2", fv_out = "-";
    fv->add_option("--in", fv_in)->required();
    fv->add_option("--t1", fv_t1);
    fv->add_option("--t2", fv_t2);
    fv->add_option("--out", fv_out);

    // sum
    auto* sm = app.add_subcommand("sum", "check the sum theorem on two maps");
    std::string sm_in, sm_g1 = "G1", sm_g2 = "G2";
    sm->add_option("--in", sm_in)->required();
    sm->add_option("--dmap1", sm_g1);
    sm->add_option("--dmap2", sm_g2);

    // three-by-three
    auto* tb = app.add_subcommand("three-by-three", "complete and verify the strong 3x3 diagram");
    std::string tb_in, tb_out = "-";
    tb->add_option("--in", tb_in,
                   "document with diagrams row1,row2,col1,col2 and dmaps Gcol,Grow")
        ->required();
    tb->add_option("--out", tb_out);

    // rotate
    auto* ro = app.add_subcommand("rotate", "rotate a diagram");
    std::string ro_in, ro_name = "T", ro_kind = "tau", ro_out = "-";
    ro->add_option("--in", ro_in)->required();
    ro->add_option("--diagram", ro_name);
    ro->add_option("--kind", ro_kind, "tau|sigma");
    ro->add_option("--out", ro_out);

    // face
    auto* fa = app.add_subcommand("face", "restrict a diagram along a face");
    std::string fa_in, fa_name = "T", fa_out = "-";
    int fa_i = 0;
    bool fa_sigma = false;
    fa->add_option("--in", fa_in)->required();
    fa->add_option("--diagram", fa_name);
    fa->add_option("--i", fa_i, "face index")->required();
    fa->add_flag("--sigma", fa_sigma, "simplex face instead of rectified face");
    fa->add_option("--out", fa_out);

    // degenerate
    auto* dg = app.add_subcommand("degenerate", "degeneracy of a diagram at an index");
    std::string dg_in, dg_name = "T", dg_out = "-";
    int dg_i = 0;
    dg->add_option("--in", dg_in)->required();
    dg->add_option("--diagram", dg_name);
    dg->add_option("--i", dg_i)->required();
    dg->add_option("--out", dg_out);

    // counts
    auto* ct = app.add_subcommand("counts", "combinatorial counts of the rectified n-simplex");
    int ct_n = 3;
    ct->add_option("--n", ct_n)->required();

    // render
    auto* re = app.add_subcommand("render", "render the Balmer staircase");
    std::string re_in, re_name, re_format = "text";
    int re_n = 3;
    re->add_option("--n", re_n, "shape dimension (without --in)");
    re->add_option("--in", re_in, "document (optional)");
    re->add_option("--diagram", re_name, "diagram name (with --in)");
    re->add_option("--format", re_format, "text|dot");

    // suite
    auto* su = app.add_subcommand("suite", "run the axiom and theorem verification suite");
    int su_cases = 10, su_nmax = 3;
    std::string su_replay, su_dump_dir = ".";
    su->add_option("--cases", su_cases, "cases per check");
    su->add_option("--nmax", su_nmax, "maximal diagram dimension");
    su->add_option("--replay", su_replay, "re-run the check recorded in a failure dump");
    su->add_option("--dump-dir", su_dump_dir, "directory for failure dumps");

    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!is_prime(flags.field)) throw std::invalid_argument("--field must be prime");

        if (verify->parsed()) {
            DiagramDocument doc = load(v_in);
            NTriangle t = doc.realize_diagram(v_name);
            auto rep = verify_diagram(t, parse_mode(flags.mode));
            int strict = 0, htpy = 0, fail = 0;
            for (auto& c : rep.conditions) {
                if (c.status == Condition::Status::Strict) ++strict;
                else if (c.status == Condition::Status::UpToHomotopy) ++htpy;
                else {
                    ++fail;
                    std::cout << "fails: " << c.desc << "\n";
                }
            }
            std::cout << (rep.pass() ? "pass" : "FAIL") << ": " << strict << " strict, " << htpy
                      << " up to homotopy, " << fail << " failing\n";
            return rep.pass() ? kExitClean : kExitFail;
        }

        if (bstd->parsed()) {
            std::vector<ChainMap> base;
            DiagramDocument out;
            out.field = flags.field;
            if (!b_in.empty()) {
                DiagramDocument doc = load(b_in);
                out.field = doc.field;
                std::stringstream names(b_maps);
                std::string name;
                while (std::getline(names, name, ','))
                    if (!name.empty()) base.push_back(doc.realize_map(name));
                if (base.empty()) throw std::invalid_argument("--maps must name the base");
            } else {
                Rng rng(flags.seed);
                GenOptions g;
                std::vector<ChainComplex> objs;
                for (int i = 0; i < b_n; ++i) objs.push_back(random_complex(flags.field, rng.next(), g));
                for (int i = 0; i + 1 < b_n; ++i)
                    base.push_back(random_chain_map(rng.next(), objs[static_cast<size_t>(i)],
                                                    objs[static_cast<size_t>(i) + 1]));
            }
            StandardBuild sb = build_standard(base);
            out.put_diagram("T", sb.t);
            out.meta["kind"] = "standard";
            save(b_out, out);
            return kExitClean;
        }

        if (cone->parsed()) {
            DiagramDocument doc = load(c_in);
            GradedMap u = doc.realize_map(c_map);
            Cone k = mapping_cone(u);
            doc.put_complex(c_map + "_cone", k.c);
            doc.put_map(c_map + "_iota", k.iota, doc.maps.at(c_map).tgt, c_map + "_cone");
            doc.put_complex(doc.maps.at(c_map).src + "_s1", u.src().shift(1));
            doc.put_map(c_map + "_pi", k.pi, c_map + "_cone", doc.maps.at(c_map).src + "_s1");
            save(c_out, doc);
            return kExitClean;
        }

        if (c2->parsed()) {
            DiagramDocument doc = load(c2_in);
            Verdict2 v = check_distinguished_2(doc.realize_diagram(c2_name), decider(flags));
            std::cout << status_name(v.status);
            if (!v.note.empty()) std::cout << " (" << v.note << ")";
            std::cout << "\n";
            if (v.status == Status::Yes && !v.cert->recheck()) {
                std::cout << "certificate failed to re-check\n";
                return kExitFail;
            }
            return status_exit(v.status);
        }

        if (cm->parsed() || cg->parsed()) {
            bool good_mode = cg->parsed();
            DiagramDocument doc = load(good_mode ? cg_in : cm_in);
            TriangleMap g = doc.realize_dmap(good_mode ? cg_name : cm_name);
            if (good_mode) {
                Verdict2 v = is_good(g, decider(flags));
                std::cout << status_name(v.status) << "\n";
                return status_exit(v.status);
            }
            VerdictMap v = check_map_full(g, decider(flags));
            std::cout << status_name(v.status);
            if (!v.note.empty()) std::cout << " (" << v.note << ")";
            std::cout << "\n";
            return status_exit(v.status);
        }

        if (li->parsed()) {
            DiagramDocument doc = load(li_in);
            TriangleMap g1 = doc.realize_dmap(li_g1);
            if (!li_apply.empty()) {
                ChainMap tau = doc.realize_map(li_apply);
                TriangleMap struck = apply_lightning(g1, tau);
                DiagramDocument out;
                out.field = doc.field;
                out.put_diagram("src", struck.src);
                out.put_diagram("tgt", struck.tgt);
                out.put_dmap("G1", struck, "src", "tgt");
                save(li_out, out);
                return kExitClean;
            }
            TriangleMap g2 = doc.realize_dmap(li_g2);
            auto d = lightning_difference(g1, g2);
            if (!d) {
                std::cout << "no (no lightning strike relates the completions)\n";
                return kExitFail;
            }
            std::cout << "yes\n";
            return kExitClean;
        }

        if (ne->parsed()) {
            DiagramDocument doc = load(ne_in);
            TriangleMap g = doc.realize_dmap(ne_name);
            VerdictMap v = check_map_full(g, decider(flags));
            VerdictMap vn = check_map_full(neeman_N(g), decider(flags));
            VerdictMap vp = check_map_full(neeman_Nprime(g), decider(flags));
            VerdictMap vpp = check_map_full(neeman_Ndoubleprime(g), decider(flags));
            std::cout << "G: " << status_name(v.status) << "  N: " << status_name(vn.status)
                      << "  N': " << status_name(vp.status) << "  N'': " << status_name(vpp.status)
                      << "\n";
            bool undet = v.status == Status::Undetermined || vn.status == Status::Undetermined ||
                         vp.status == Status::Undetermined || vpp.status == Status::Undetermined;
            if (undet) return kExitUndetermined;
            bool agree = vn.status == v.status && vp.status == v.status && vpp.status == v.status;
            return agree ? kExitClean : kExitFail;
        }

        if (fv->parsed()) {
            DiagramDocument doc = load(fv_in);
            Verdict2 v1 = check_distinguished_2(doc.realize_diagram(fv_t1), decider(flags));
            Verdict2 v2 = check_distinguished_2(doc.realize_diagram(fv_t2), decider(flags));
            if (v1.status != Status::Yes || v2.status != Status::Yes) {
                std::cout << "inputs not certified distinguished\n";
                return v1.status == Status::No || v2.status == Status::No ? kExitFail
                                                                          : kExitUndetermined;
            }
            BuiltN five = build_five_triangle(*v1.cert, *v2.cert);
            DiagramDocument out;
            out.field = doc.field;
            out.put_diagram("T", five.t);
            out.meta["kind"] = "five-triangle";
            save(fv_out, out);
            return kExitClean;
        }

        if (sm->parsed()) {
            DiagramDocument doc = load(sm_in);
            SumVerdicts sv = check_sum_theorem(doc.realize_dmap(sm_g1), doc.realize_dmap(sm_g2),
                                               decider(flags));
            std::cout << "G1: " << status_name(sv.g1.status)
                      << "  G2: " << status_name(sv.g2.status)
                      << "  G1(+)G2: " << status_name(sv.sum.status) << "\n";
            if (sv.g1.status == Status::Undetermined || sv.g2.status == Status::Undetermined ||
                sv.sum.status == Status::Undetermined)
                return kExitUndetermined;
            return sv.consistent() ? kExitClean : kExitFail;
        }

        if (tb->parsed()) {
            DiagramDocument doc = load(tb_in);
            ThreeByThree d = complete_3x3(doc.realize_diagram("row1"), doc.realize_diagram("row2"),
                                          doc.realize_diagram("col1"), doc.realize_diagram("col2"),
                                          doc.realize_dmap("Gcol"), doc.realize_dmap("Grow"),
                                          decider(flags));
            ThreeByThreeReport rep = verify_3x3(d, decider(flags));
            std::cout << (rep.pass() ? "pass" : "FAIL");
            if (!rep.first_failure.empty()) std::cout << " (" << rep.first_failure << ")";
            std::cout << "\n";
            DiagramDocument out;
            out.field = doc.field;
            out.put_diagram("row3", d.row[2]);
            out.put_diagram("col3", d.col[2]);
            save(tb_out, out);
            return rep.pass() ? kExitClean : kExitFail;
        }

        if (ro->parsed()) {
            DiagramDocument doc = load(ro_in);
            NTriangle t = doc.realize_diagram(ro_name);
            NTriangle r = ro_kind == "sigma" ? rotate_sigma(t) : rotate_tau(t);
            DiagramDocument out;
            out.field = doc.field;
            out.put_diagram(ro_name, r);
            save(ro_out, out);
            return kExitClean;
        }

        if (fa->parsed()) {
            DiagramDocument doc = load(fa_in);
            NTriangle t = doc.realize_diagram(fa_name);
            DiagramDocument out;
            out.field = doc.field;
            if (fa_sigma) {
                SimplexDiagram sd = face_sigma(t, fa_i);
                for (size_t i = 0; i < sd.obj.size(); ++i)
                    out.put_complex("b" + std::to_string(i + 1), sd.obj[i]);
                for (auto& [xy, m] : sd.edge)
                    out.put_map("e" + std::to_string(xy.first) + std::to_string(xy.second), m,
                                "b" + std::to_string(std::min(xy.first, xy.second) + 1),
                                "b" + std::to_string(std::max(xy.first, xy.second) + 1));
            } else {
                out.put_diagram(fa_name, face_pi(t, fa_i));
            }
            save(fa_out, out);
            return kExitClean;
        }

        if (dg->parsed()) {
            DiagramDocument doc = load(dg_in);
            DiagramDocument out;
            out.field = doc.field;
            out.put_diagram(dg_name, degenerate(doc.realize_diagram(dg_name), dg_i));
            save(dg_out, out);
            return kExitClean;
        }

        if (ct->parsed()) {
            Counts c = counts(ct_n);
            std::cout << "vertices " << c.vertices << "\nedges " << c.edges
                      << "\nsimplex-facets " << c.simplex_facets << "\nrectified-facets "
                      << c.rectified_facets << "\nface lattice by dimension:\n";
            for (auto& [dim, k] : face_lattice_counts(ct_n))
                std::cout << "  dim " << dim << ": " << k << "\n";
            std::cout << "i-face formula (n+1 choose i+1)(n+1-i):\n";
            for (int i = 0; i <= ct_n - 1; ++i)
                std::cout << "  i=" << i << ": " << binom(ct_n + 1, i + 1) * (ct_n + 1 - i)
                          << "\n";
            return kExitClean;
        }

        if (re->parsed()) {
            std::optional<NTriangle> t;
            int n = re_n;
            if (!re_in.empty()) {
                DiagramDocument doc = load(re_in);
                t = doc.realize_diagram(re_name);
                n = t->n();
            }
            if (re_format == "dot")
                std::cout << render_balmer_dot(n, t ? &*t : nullptr);
            else
                std::cout << render_balmer_text(n, t ? &*t : nullptr);
            return kExitClean;
        }

        if (su->parsed()) {
            if (!su_replay.empty()) {
                DiagramDocument doc = load(su_replay);
                CaseOutcome out = replay_check(doc, decider(flags));
                std::cout << "replay " << doc.meta.at("check") << ": "
                          << status_name(out.result);
                if (!out.note.empty()) std::cout << " (" << out.note << ")";
                std::cout << "\n";
                return status_exit(out.result);
            }
            SuiteOptions opt;
            opt.seed = flags.seed;
            opt.cases = su_cases;
            opt.n_max = su_nmax;
            opt.p = flags.field;
            opt.dec = decider(flags);
            SuiteReport rep = axiom_suite(opt);
            std::cout << rep.to_text();
            int idx = 0;
            for (auto& c : rep.checks) {
                if (!c.first_failure_dump.empty()) {
                    std::string path = su_dump_dir + "/suitefail_" + c.name + "_" +
                                       std::to_string(idx) + ".ntri";
                    std::ofstream out(path);
                    out << c.first_failure_dump;
                    std::cout << "failure dump written to " << path << "\n";
                }
                ++idx;
            }
            return rep.exit_code();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
