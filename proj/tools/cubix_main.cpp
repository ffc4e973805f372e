// Command line front end. Talks to the kernel exclusively through the
// C API in cubix.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cubix.h"

namespace {

struct StringBox {
    char* s = nullptr;
    ~StringBox() { cubix_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

struct ObjectBox {
    cubix_object* obj = nullptr;
    ~ObjectBox() { cubix_object_free(obj); }
};

[[noreturn]] void die(cubix_status st) {
    std::fprintf(stderr, "error: %s\n", cubix_last_error());
    std::exit(static_cast<int>(st));
}

void check(cubix_status st) {
    if (st != CUBIX_OK) die(st);
}

void apply_limit_env() {
    int max_dim = 6;
    std::uint64_t max_candidates = 1'000'000;
    bool touched = false;
    if (const char* e = std::getenv("CUBIX_MAX_DIM")) {
        max_dim = std::atoi(e);
        touched = true;
    }
    if (const char* e = std::getenv("CUBIX_MAX_CANDIDATES")) {
        max_candidates = std::strtoull(e, nullptr, 10);
        touched = true;
    }
    if (touched) check(cubix_set_limits(max_dim, max_candidates));
}

void emit_object(cubix_object* obj, const std::string& out_path, bool summary, bool as_json) {
    if (!out_path.empty()) check(cubix_object_save(obj, out_path.c_str()));
    if (summary || out_path.empty()) {
        StringBox s;
        check(cubix_object_summary(obj, as_json ? 1 : 0, &s.s));
        std::printf("%s", s.str().c_str());
        if (as_json) std::printf("\n");
    }
}

ObjectBox load(const std::string& path) {
    ObjectBox box;
    check(cubix_object_load(path.c_str(), &box.obj));
    return box;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubix - exact computations with cubical sets, their realizations "
                 "and homotopy coherent nerves"};
    app.require_subcommand(1);
    apply_limit_env();

    int opt_max_dim = -1;
    std::uint64_t opt_max_candidates = 0;
    app.add_option("--max-dim", opt_max_dim, "override the dimension guard");
    app.add_option("--max-candidates", opt_max_candidates, "override the enumeration guard");

    // ---- normalize ----------------------------------------------------
    auto* cmd_normalize = app.add_subcommand("normalize", "normalize a generator word");
    std::string norm_flavor = "c", norm_word;
    int norm_src = -1;
    bool norm_json = false, norm_table = false, norm_no_table = false;
    cmd_normalize->add_option("-f,--flavor", norm_flavor, "cube flavor: r or c");
    cmd_normalize->add_option("--src", norm_src, "source dimension (default: smallest valid)");
    cmd_normalize->add_flag("--json", norm_json, "machine output");
    cmd_normalize->add_flag("--table", norm_table, "print the function table (default)");
    cmd_normalize->add_flag("--no-table", norm_no_table, "omit the function table");
    cmd_normalize->add_option("word", norm_word, "tokens like \"d1@1 . d0@0\"")->required();

    // ---- homset --------------------------------------------------------
    auto* cmd_homset = app.add_subcommand("homset", "count cube-category morphisms");
    std::string homset_flavor = "c";
    int homset_m = 0, homset_n = 0;
    bool homset_json = false;
    cmd_homset->add_option("-f,--flavor", homset_flavor, "cube flavor: r or c");
    cmd_homset->add_flag("--json", homset_json, "machine output");
    cmd_homset->add_option("m", homset_m, "source dimension")->required();
    cmd_homset->add_option("n", homset_n, "target dimension")->required();

    // ---- build ----------------------------------------------------------
    auto* cmd_build = app.add_subcommand("build", "build a named object and emit its file");
    std::string build_kind, build_flavor = "c", build_out;
    std::vector<int> build_args;
    int build_trunc = -1;
    bool build_summary = false, build_json = false;
    cmd_build->add_option("kind", build_kind,
                          "box | boundary | cap | simplex | bsimplex | horn | nerve-chain | "
                          "wcat | discrete-1 | discrete-2 | discrete-3 | discrete-square | "
                          "yoneda | boundary-map | cap-map")
        ->required();
    cmd_build->add_option("args", build_args, "integer arguments for the kind");
    std::string build_word;
    int build_src = -1;
    cmd_build->add_option("--word", build_word, "generator word for kind=yoneda");
    cmd_build->add_option("--src", build_src, "source dimension for kind=yoneda");
    cmd_build->add_option("-f,--flavor", build_flavor, "cube flavor: r or c");
    cmd_build->add_option("-N,--trunc", build_trunc, "truncation (default: smallest sensible)");
    cmd_build->add_option("-o,--out", build_out, "output file");
    cmd_build->add_flag("--summary", build_summary, "print cell counts");
    cmd_build->add_flag("--json", build_json, "machine output");

    // ---- boundary / cap shortcuts ---------------------------------------
    auto* cmd_boundary = app.add_subcommand("boundary", "boundary of the n-cube (build shortcut)");
    std::string bdy_flavor = "c", bdy_out;
    int bdy_n = 0, bdy_trunc = -1;
    bool bdy_summary = false, bdy_json = false;
    cmd_boundary->add_option("n", bdy_n)->required();
    cmd_boundary->add_option("-f,--flavor", bdy_flavor);
    cmd_boundary->add_option("-N,--trunc", bdy_trunc);
    cmd_boundary->add_option("-o,--out", bdy_out);
    cmd_boundary->add_flag("--summary", bdy_summary);
    cmd_boundary->add_flag("--json", bdy_json);

    auto* cmd_cap = app.add_subcommand("cap", "open box of the n-cube (build shortcut)");
    std::string cap_flavor = "c", cap_out;
    int cap_n = 0, cap_eps = 0, cap_i = 0, cap_trunc = -1;
    bool cap_summary = false, cap_json = false;
    cmd_cap->add_option("n", cap_n)->required();
    cmd_cap->add_option("eps", cap_eps)->required();
    cmd_cap->add_option("i", cap_i)->required();
    cmd_cap->add_option("-f,--flavor", cap_flavor);
    cmd_cap->add_option("-N,--trunc", cap_trunc);
    cmd_cap->add_option("-o,--out", cap_out);
    cmd_cap->add_flag("--summary", cap_summary);
    cmd_cap->add_flag("--json", cap_json);

    // ---- tensor ----------------------------------------------------------
    auto* cmd_tensor = app.add_subcommand("tensor", "Day tensor of cubical objects (or chain tensor)");
    std::string tensor_a, tensor_b, tensor_out;
    bool tensor_summary = false, tensor_json = false;
    cmd_tensor->add_option("a", tensor_a)->required();
    cmd_tensor->add_option("b", tensor_b)->required();
    cmd_tensor->add_option("-o,--out", tensor_out, "output file");
    cmd_tensor->add_flag("--summary", tensor_summary);
    cmd_tensor->add_flag("--json", tensor_json);

    // ---- pushout ----------------------------------------------------------
    auto* cmd_pushout = app.add_subcommand("pushout", "pushout of two map files sharing a source");
    std::string po_f, po_g, po_out;
    bool po_summary = false, po_json = false;
    cmd_pushout->add_option("f", po_f, "map A -> X")->required();
    cmd_pushout->add_option("g", po_g, "map A -> Y")->required();
    cmd_pushout->add_option("-o,--out", po_out, "output file");
    cmd_pushout->add_flag("--summary", po_summary);
    cmd_pushout->add_flag("--json", po_json);

    // ---- iso ----------------------------------------------------------
    auto* cmd_iso = app.add_subcommand("iso", "decide isomorphism of two objects");
    std::string iso_a, iso_b;
    bool iso_json = false;
    cmd_iso->add_option("a", iso_a)->required();
    cmd_iso->add_option("b", iso_b)->required();
    cmd_iso->add_flag("--json", iso_json);

    // ---- triangulate ----------------------------------------------------
    auto* cmd_triangulate = app.add_subcommand("triangulate", "simplicial realization of a cubical object");
    std::string tri_in, tri_out;
    bool tri_summary = false, tri_json = false;
    cmd_triangulate->add_option("object", tri_in)->required();
    cmd_triangulate->add_option("-o,--out", tri_out, "output file");
    cmd_triangulate->add_flag("--summary", tri_summary);
    cmd_triangulate->add_flag("--json", tri_json);

    // ---- realize ----------------------------------------------------------
    auto* cmd_realize = app.add_subcommand("realize", "chain realization of a cubical object");
    std::string re_in, re_out, re_ring = "Z";
    int re_p = 2;
    bool re_json = false;
    cmd_realize->add_option("object", re_in)->required();
    cmd_realize->add_option("--ring", re_ring, "Z or Fp");
    cmd_realize->add_option("-p,--prime", re_p, "prime for Fp");
    cmd_realize->add_option("-o,--out", re_out, "output file");
    cmd_realize->add_flag("--json", re_json);

    // ---- homology ----------------------------------------------------------
    auto* cmd_homology = app.add_subcommand(
        "homology", "homology of a chain complex file, or of a cubical object via realization");
    std::string ho_in;
    bool ho_json = false;
    cmd_homology->add_option("object", ho_in)->required();
    cmd_homology->add_flag("--json", ho_json);

    // ---- nerve ----------------------------------------------------------
    auto* cmd_nerve = app.add_subcommand("nerve", "homotopy coherent nerve");
    std::string nerve_category, nerve_dg, nerve_out;
    int nerve_k = 2, nerve_p = 2;
    bool nerve_summary = false, nerve_json = false;
    cmd_nerve->add_option("--category", nerve_category, "cubical category file");
    cmd_nerve->add_option("--dg", nerve_dg, "builtin dg category: arrow | trivial");
    cmd_nerve->add_option("-k,--kmax", nerve_k, "nerve truncation");
    cmd_nerve->add_option("-p,--prime", nerve_p, "prime for dg nerves");
    cmd_nerve->add_option("-o,--out", nerve_out, "output file");
    cmd_nerve->add_flag("--summary", nerve_summary);
    cmd_nerve->add_flag("--json", nerve_json);

    // ---- fill ----------------------------------------------------------
    auto* cmd_fill = app.add_subcommand("fill", "cap / inner horn filling probe");
    std::string fill_in;
    int fill_n = 2, fill_eps = 0, fill_i = 0, fill_k = -1;
    bool fill_horn = false, fill_json = false;
    cmd_fill->add_option("object", fill_in)->required();
    cmd_fill->add_option("-n,--dim", fill_n, "cap or horn dimension");
    cmd_fill->add_option("-e,--eps", fill_eps, "cap sign (0 or 1)");
    cmd_fill->add_option("-i,--index", fill_i, "cap face index (0-based)");
    cmd_fill->add_option("-k,--horn-index", fill_k, "inner horn index (implies --horn)");
    cmd_fill->add_flag("--horn", fill_horn, "probe simplicial inner horns");
    cmd_fill->add_flag("--json", fill_json);

    // ---- selftest ----------------------------------------------------------
    auto* cmd_selftest = app.add_subcommand("selftest", "run the invariant suites");
    bool st_quick = false;
    cmd_selftest->add_flag("--quick", st_quick, "smaller dimension caps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (opt_max_dim >= 0 || opt_max_candidates > 0)
        check(cubix_set_limits(opt_max_dim >= 0 ? opt_max_dim : 6,
                               opt_max_candidates > 0 ? opt_max_candidates : 1'000'000));

    if (cmd_normalize->parsed()) {
        StringBox normal, table;
        int src = 0, tgt = 0;
        check(cubix_word_normalize(norm_flavor.empty() ? 'c' : norm_flavor[0], norm_word.c_str(),
                                   norm_src, &normal.s, &table.s, &src, &tgt));
        if (norm_json) {
            std::string escaped;
            for (char ch : table.str())
                if (ch == '\n')
                    escaped += "\\n";
                else
                    escaped += ch;
            std::printf("{\"normal\":\"%s\",\"src\":%d,\"tgt\":%d,\"table\":\"%s\"}\n",
                        normal.str().c_str(), src, tgt, escaped.c_str());
        } else {
            std::printf("%s : %d -> %d\n", normal.str().c_str(), src, tgt);
            if (!norm_no_table || norm_table) std::printf("%s\n", table.str().c_str());
        }
        return 0;
    }
    if (cmd_homset->parsed()) {
        std::uint64_t count = 0;
        check(cubix_homset_count(homset_flavor.empty() ? 'c' : homset_flavor[0], homset_m, homset_n,
                                 &count));
        if (homset_json)
            std::printf("{\"count\":%llu}\n", static_cast<unsigned long long>(count));
        else
            std::printf("%llu\n", static_cast<unsigned long long>(count));
        return 0;
    }
    if (cmd_build->parsed()) {
        ObjectBox box;
        const char fl = build_flavor.empty() ? 'c' : build_flavor[0];
        auto arg = [&](std::size_t i) -> int {
            if (i >= build_args.size()) {
                std::fprintf(stderr, "error: missing argument %zu for kind %s\n", i + 1,
                             build_kind.c_str());
                std::exit(2);
            }
            return build_args[i];
        };
        auto trunc_or = [&](int dflt) { return build_trunc >= 0 ? build_trunc : dflt; };
        if (build_kind == "box")
            check(cubix_build_box(fl, arg(0), trunc_or(arg(0)), &box.obj));
        else if (build_kind == "boundary")
            check(cubix_build_boundary(fl, arg(0), trunc_or(arg(0)), &box.obj));
        else if (build_kind == "cap")
            check(cubix_build_cap(fl, arg(0), arg(1), arg(2), trunc_or(arg(0)), &box.obj));
        else if (build_kind == "simplex")
            check(cubix_build_simplex(arg(0), trunc_or(arg(0) + 1), &box.obj));
        else if (build_kind == "bsimplex")
            check(cubix_build_boundary_simplex(arg(0), trunc_or(arg(0) + 1), &box.obj));
        else if (build_kind == "horn")
            check(cubix_build_horn(arg(0), arg(1), trunc_or(arg(0) + 1), &box.obj));
        else if (build_kind == "nerve-chain")
            check(cubix_build_nerve_of_chain(arg(0), trunc_or(arg(0) + 1), &box.obj));
        else if (build_kind == "wcat")
            check(cubix_build_w_category(arg(0), trunc_or(std::max(arg(0) - 1, 0)), &box.obj));
        else if (build_kind == "discrete-1")
            check(cubix_build_discrete_category("[1]", fl, trunc_or(2), &box.obj));
        else if (build_kind == "discrete-2")
            check(cubix_build_discrete_category("[2]", fl, trunc_or(2), &box.obj));
        else if (build_kind == "discrete-3")
            check(cubix_build_discrete_category("[3]", fl, trunc_or(2), &box.obj));
        else if (build_kind == "discrete-square")
            check(cubix_build_discrete_category("square", fl, trunc_or(2), &box.obj));
        else if (build_kind == "yoneda")
            check(cubix_build_word_map(fl, build_word.c_str(), build_src, trunc_or(2), &box.obj));
        else if (build_kind == "boundary-map")
            check(cubix_build_boundary_map(fl, arg(0), trunc_or(arg(0)), &box.obj));
        else if (build_kind == "cap-map")
            check(cubix_build_cap_map(fl, arg(0), arg(1), arg(2), trunc_or(arg(0)), &box.obj));
        else {
            std::fprintf(stderr, "error: unknown build kind '%s'\n", build_kind.c_str());
            return 2;
        }
        StringBox kind;
        check(cubix_object_kind(box.obj, &kind.s));
        if (kind.str() == "cubical" || kind.str() == "simplicial") {
            emit_object(box.obj, build_out, build_summary, build_json);
        } else {
            if (!build_out.empty()) check(cubix_object_save(box.obj, build_out.c_str()));
            if (build_out.empty()) std::printf("%s built\n", kind.str().c_str());
        }
        return 0;
    }
    if (cmd_boundary->parsed()) {
        ObjectBox box;
        check(cubix_build_boundary(bdy_flavor.empty() ? 'c' : bdy_flavor[0], bdy_n,
                                   bdy_trunc >= 0 ? bdy_trunc : bdy_n, &box.obj));
        emit_object(box.obj, bdy_out, bdy_summary, bdy_json);
        return 0;
    }
    if (cmd_cap->parsed()) {
        ObjectBox box;
        check(cubix_build_cap(cap_flavor.empty() ? 'c' : cap_flavor[0], cap_n, cap_eps, cap_i,
                              cap_trunc >= 0 ? cap_trunc : cap_n, &box.obj));
        emit_object(box.obj, cap_out, cap_summary, cap_json);
        return 0;
    }
    if (cmd_tensor->parsed()) {
        ObjectBox a = load(tensor_a), b = load(tensor_b), out;
        check(cubix_tensor(a.obj, b.obj, &out.obj));
        emit_object(out.obj, tensor_out, tensor_summary, tensor_json);
        return 0;
    }
    if (cmd_pushout->parsed()) {
        ObjectBox f = load(po_f), g = load(po_g), out;
        check(cubix_pushout(f.obj, g.obj, &out.obj));
        emit_object(out.obj, po_out, po_summary, po_json);
        return 0;
    }
    if (cmd_iso->parsed()) {
        ObjectBox a = load(iso_a), b = load(iso_b);
        int iso = 0;
        check(cubix_iso(a.obj, b.obj, &iso));
        if (iso_json)
            std::printf("{\"isomorphic\":%s}\n", iso ? "true" : "false");
        else
            std::printf("%s\n", iso ? "isomorphic" : "not isomorphic");
        return 0;
    }
    if (cmd_triangulate->parsed()) {
        ObjectBox in = load(tri_in), out;
        check(cubix_triangulate(in.obj, &out.obj));
        emit_object(out.obj, tri_out, tri_summary, tri_json);
        return 0;
    }
    if (cmd_realize->parsed()) {
        ObjectBox in = load(re_in), out;
        check(cubix_chain_realize(in.obj, re_ring.c_str(), re_p, &out.obj));
        if (!re_out.empty())
            check(cubix_object_save(out.obj, re_out.c_str()));
        else {
            StringBox text;
            check(cubix_object_to_json(out.obj, &text.s));
            std::printf("%s\n", text.str().c_str());
        }
        return 0;
    }
    if (cmd_homology->parsed()) {
        ObjectBox in = load(ho_in);
        StringBox text;
        check(cubix_homology(in.obj, ho_json ? 1 : 0, &text.s));
        std::printf("%s\n", text.str().c_str());
        return 0;
    }
    if (cmd_nerve->parsed()) {
        ObjectBox out;
        if (!nerve_dg.empty()) {
            check(cubix_nerve_dg(nerve_dg.c_str(), nerve_p, nerve_k, &out.obj));
        } else if (!nerve_category.empty()) {
            ObjectBox cat = load(nerve_category);
            check(cubix_nerve(cat.obj, nerve_k, &out.obj));
        } else {
            std::fprintf(stderr, "error: nerve needs --category FILE or --dg NAME\n");
            return 2;
        }
        emit_object(out.obj, nerve_out, nerve_summary, nerve_json);
        return 0;
    }
    if (cmd_fill->parsed()) {
        ObjectBox in = load(fill_in);
        std::uint64_t total = 0, unfillable = 0;
        if (fill_horn || fill_k >= 0) {
            check(cubix_horn_fill(in.obj, fill_n, fill_k < 0 ? 1 : fill_k, &total, &unfillable));
        } else {
            check(cubix_cap_fill(in.obj, fill_n, fill_eps, fill_i, &total, &unfillable));
        }
        if (fill_json)
            std::printf("{\"total\":%llu,\"unfillable\":%llu}\n",
                        static_cast<unsigned long long>(total),
                        static_cast<unsigned long long>(unfillable));
        else
            std::printf("maps: %llu, unfillable: %llu\n", static_cast<unsigned long long>(total),
                        static_cast<unsigned long long>(unfillable));
        return 0;
    }
    if (cmd_selftest->parsed()) {
        StringBox report;
        int failures = 0;
        check(cubix_selftest(st_quick ? 1 : 0, &report.s, &failures));
        std::printf("%s", report.str().c_str());
        if (failures > 0) {
            std::printf("%d check(s) failed\n", failures);
            return 3;
        }
        std::printf("all checks passed\n");
        return 0;
    }
    return 0;
}
