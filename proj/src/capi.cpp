#include "cubix.h"

#include <cstring>
#include <sstream>
#include <variant>

#include "cubix/enriched.hpp"
#include "cubix/error.hpp"
#include "cubix/format.hpp"
#include "cubix/limits.hpp"
#include "cubix/selftest.hpp"
#include "cubix/simplicial.hpp"

using namespace cubix;

struct cubix_object {
    std::variant<PshPtr, ChPtr, PresheafMap, CatPtr> value;
};

namespace {

thread_local std::string g_last_error;

cubix_status set_error(errc code, const std::string& msg) {
    g_last_error = msg;
    return static_cast<cubix_status>(static_cast<int>(code));
}

template <typename Fn>
cubix_status guarded(Fn&& fn) {
    try {
        fn();
        return CUBIX_OK;
    } catch (const Error& e) {
        return set_error(e.code(), e.what());
    } catch (const std::exception& e) {
        return set_error(errc::semantic, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const PshPtr& as_presheaf(const cubix_object* obj) {
    if (!obj || !std::holds_alternative<PshPtr>(obj->value))
        fail_semantic("expected a cubical or simplicial object");
    return std::get<PshPtr>(obj->value);
}

const PshPtr& as_cubical(const cubix_object* obj) {
    const PshPtr& p = as_presheaf(obj);
    require_semantic(is_cubical(*p), "expected a cubical object");
    return p;
}

const PshPtr& as_simplicial(const cubix_object* obj) {
    const PshPtr& p = as_presheaf(obj);
    require_semantic(is_simplicial(*p), "expected a simplicial object");
    return p;
}

const ChPtr& as_chain(const cubix_object* obj) {
    if (!obj || !std::holds_alternative<ChPtr>(obj->value)) fail_semantic("expected a chain complex");
    return std::get<ChPtr>(obj->value);
}

const PresheafMap& as_map(const cubix_object* obj) {
    if (!obj || !std::holds_alternative<PresheafMap>(obj->value)) fail_semantic("expected a map");
    return std::get<PresheafMap>(obj->value);
}

const CatPtr& as_category(const cubix_object* obj) {
    if (!obj || !std::holds_alternative<CatPtr>(obj->value))
        fail_semantic("expected a cubical category");
    return std::get<CatPtr>(obj->value);
}

cubix_object* wrap(std::variant<PshPtr, ChPtr, PresheafMap, CatPtr> v) {
    return new cubix_object{std::move(v)};
}

std::string object_json(const cubix_object* obj) {
    if (std::holds_alternative<PshPtr>(obj->value))
        return presheaf_to_json(*std::get<PshPtr>(obj->value));
    if (std::holds_alternative<ChPtr>(obj->value))
        return chain_to_json(*std::get<ChPtr>(obj->value));
    if (std::holds_alternative<PresheafMap>(obj->value))
        return map_to_json(std::get<PresheafMap>(obj->value));
    return category_to_json(*std::get<CatPtr>(obj->value));
}

cubix_object* object_from_json_text(const std::string& text) {
    const std::string kind = json_kind(text);
    if (kind == "cubical" || kind == "simplicial") return wrap(presheaf_from_json(text));
    if (kind == "cubical_map" || kind == "simplicial_map") return wrap(map_from_json(text));
    if (kind == "chain") return wrap(chain_from_json(text));
    if (kind == "cubical_category") return wrap(category_from_json(text));
    fail_parse("unknown object kind '" + kind + "'");
}

FinCategory named_category(const std::string& name) {
    if (name == "[1]") return FinCategory::chain(1);
    if (name == "[2]") return FinCategory::chain(2);
    if (name == "[3]") return FinCategory::chain(3);
    if (name == "square") return FinCategory::square();
    fail_parse("unknown category name '" + name + "' (use [1], [2], [3], square)");
}

} // namespace

extern "C" {

const char* cubix_last_error(void) { return g_last_error.c_str(); }

void cubix_object_free(cubix_object* obj) { delete obj; }

void cubix_string_free(char* s) { delete[] s; }

cubix_status cubix_set_limits(int max_cube_dim, uint64_t max_candidates) {
    return guarded([&] {
        require_semantic(max_cube_dim >= 0, "negative dimension guard");
        limits().max_cube_dim = max_cube_dim;
        limits().max_candidates = max_candidates;
    });
}

cubix_status cubix_word_normalize(char flavor, const char* word, int src_dim, char** out_normal,
                                  char** out_table, int* out_src_dim, int* out_tgt_dim) {
    return guarded([&] {
        require_semantic(word != nullptr, "null word");
        const CubeWord w = parse_word(flavor_from_char(flavor), word, src_dim);
        if (out_normal) *out_normal = dup_string(to_string(w));
        if (out_table) *out_table = dup_string(table_to_string(eval(w)));
        if (out_src_dim) *out_src_dim = w.src_dim();
        if (out_tgt_dim) *out_tgt_dim = w.tgt_dim();
    });
}

cubix_status cubix_homset_count(char flavor, int m, int n, uint64_t* out) {
    return guarded([&] {
        const auto words = enumerate_homs(flavor_from_char(flavor), m, n);
        if (out) *out = words.size();
    });
}

cubix_status cubix_build_box(char flavor, int n, int trunc, cubix_object** out) {
    return guarded([&] {
        require_semantic(n >= 0 && n <= trunc, "need 0 <= n <= trunc");
        *out = wrap(cubical_representable(flavor_from_char(flavor), n, trunc));
    });
}

cubix_status cubix_build_boundary(char flavor, int n, int trunc, cubix_object** out) {
    return guarded([&] {
        require_semantic(n >= 0 && n <= trunc, "need 0 <= n <= trunc");
        *out = wrap(cubical_boundary(flavor_from_char(flavor), n, trunc).object);
    });
}

cubix_status cubix_build_cap(char flavor, int n, int eps, int i, int trunc, cubix_object** out) {
    return guarded([&] {
        require_semantic(n >= 1 && n <= trunc, "need 1 <= n <= trunc");
        *out = wrap(cubical_cap(flavor_from_char(flavor), n, eps, i, trunc).object);
    });
}

cubix_status cubix_build_simplex(int n, int trunc, cubix_object** out) {
    return guarded([&] {
        require_semantic(n >= 0 && trunc >= 0, "negative dimensions");
        *out = wrap(simplex(n, trunc));
    });
}

cubix_status cubix_build_boundary_simplex(int n, int trunc, cubix_object** out) {
    return guarded([&] { *out = wrap(simplicial_boundary(n, trunc).object); });
}

cubix_status cubix_build_horn(int n, int k, int trunc, cubix_object** out) {
    return guarded([&] { *out = wrap(simplicial_horn(n, k, trunc).object); });
}

cubix_status cubix_build_nerve_of_chain(int n, int trunc, cubix_object** out) {
    return guarded([&] { *out = wrap(nerve_of_category(FinCategory::chain(n), trunc)); });
}

cubix_status cubix_build_w_category(int n, int trunc, cubix_object** out) {
    return guarded([&] {
        require_semantic(n >= 0, "negative index");
        *out = wrap(W(n, trunc));
    });
}

cubix_status cubix_build_discrete_category(const char* name, char flavor, int trunc,
                                           cubix_object** out) {
    return guarded([&] {
        require_semantic(name != nullptr, "null category name");
        *out = wrap(discrete_enrich(named_category(name), flavor_from_char(flavor), trunc));
    });
}

cubix_status cubix_build_word_map(char flavor, const char* word, int src_dim, int trunc,
                                  cubix_object** out) {
    return guarded([&] {
        require_semantic(word != nullptr, "null word");
        const CubeWord w = parse_word(flavor_from_char(flavor), word, src_dim);
        *out = wrap(representable_map(w, trunc));
    });
}

cubix_status cubix_build_boundary_map(char flavor, int n, int trunc, cubix_object** out) {
    return guarded([&] {
        require_semantic(n >= 0 && n <= trunc, "need 0 <= n <= trunc");
        *out = wrap(cubical_boundary(flavor_from_char(flavor), n, trunc).inclusion);
    });
}

cubix_status cubix_build_cap_map(char flavor, int n, int eps, int i, int trunc,
                                 cubix_object** out) {
    return guarded([&] {
        require_semantic(n >= 1 && n <= trunc, "need 1 <= n <= trunc");
        *out = wrap(cubical_cap(flavor_from_char(flavor), n, eps, i, trunc).inclusion);
    });
}

cubix_status cubix_object_load(const char* path, cubix_object** out) {
    return guarded([&] {
        require_semantic(path != nullptr, "null path");
        *out = object_from_json_text(read_file(path));
    });
}

cubix_status cubix_object_save(const cubix_object* obj, const char* path) {
    return guarded([&] {
        require_semantic(obj != nullptr && path != nullptr, "null argument");
        write_file(path, object_json(obj) + "\n");
    });
}

cubix_status cubix_object_to_json(const cubix_object* obj, char** out) {
    return guarded([&] {
        require_semantic(obj != nullptr, "null object");
        *out = dup_string(object_json(obj));
    });
}

cubix_status cubix_object_from_json(const char* text, cubix_object** out) {
    return guarded([&] {
        require_semantic(text != nullptr, "null text");
        *out = object_from_json_text(text);
    });
}

cubix_status cubix_object_kind(const cubix_object* obj, char** out) {
    return guarded([&] {
        require_semantic(obj != nullptr, "null object");
        std::string kind;
        if (std::holds_alternative<PshPtr>(obj->value))
            kind = is_simplicial(*std::get<PshPtr>(obj->value)) ? "simplicial" : "cubical";
        else if (std::holds_alternative<ChPtr>(obj->value))
            kind = "chain";
        else if (std::holds_alternative<PresheafMap>(obj->value))
            kind = is_simplicial(*std::get<PresheafMap>(obj->value).src) ? "simplicial_map"
                                                                         : "cubical_map";
        else
            kind = "cubical_category";
        *out = dup_string(kind);
    });
}

cubix_status cubix_object_summary(const cubix_object* obj, int as_json, char** out) {
    return guarded([&] {
        const PshPtr& p = as_presheaf(obj);
        *out = dup_string(as_json ? summary_to_json(*p) : summary_to_text(*p));
    });
}

cubix_status cubix_tensor(const cubix_object* a, const cubix_object* b, cubix_object** out) {
    return guarded([&] {
        if (a && std::holds_alternative<ChPtr>(a->value)) {
            ChainTensor t(as_chain(a), as_chain(b));
            *out = wrap(t.object());
            return;
        }
        DayTensor t(as_cubical(a), as_cubical(b));
        *out = wrap(t.object());
    });
}

cubix_status cubix_pushout(const cubix_object* f_map, const cubix_object* g_map,
                           cubix_object** out) {
    return guarded([&] {
        const PresheafMap& f = as_map(f_map);
        PresheafMap g = as_map(g_map);
        // maps loaded from separate files carry distinct source copies
        g = rebase_map(std::move(g), f.src, nullptr);
        *out = wrap(pushout(f, g).object);
    });
}

cubix_status cubix_iso(const cubix_object* a, const cubix_object* b, int* out_isomorphic) {
    return guarded([&] {
        const PshPtr& pa = as_presheaf(a);
        const PshPtr& pb = as_presheaf(b);
        require_semantic(&pa->site() == &pb->site(), "objects live on different sites");
        require_semantic(pa->trunc() == pb->trunc(), "objects have different truncations");
        if (out_isomorphic) *out_isomorphic = find_isomorphism(pa, pb).has_value() ? 1 : 0;
    });
}

cubix_status cubix_triangulate(const cubix_object* cubical, cubix_object** out) {
    return guarded([&] {
        Triangulation t(as_cubical(cubical));
        *out = wrap(t.object());
    });
}

cubix_status cubix_chain_realize(const cubix_object* cubical, const char* ring, int p,
                                 cubix_object** out) {
    return guarded([&] {
        require_semantic(ring != nullptr, "null ring");
        const Ring r = std::string(ring) == "Z" ? Ring::Z() : Ring::Fp(p);
        ChainRealization lr(as_cubical(cubical), r);
        *out = wrap(lr.object());
    });
}

cubix_status cubix_homology(const cubix_object* obj, int as_json, char** out) {
    return guarded([&] {
        ChPtr complex;
        if (obj && std::holds_alternative<ChPtr>(obj->value)) {
            complex = as_chain(obj);
        } else {
            ChainRealization lr(as_cubical(obj), Ring::Z());
            complex = lr.object();
        }
        *out = dup_string(as_json ? homology_to_json(*complex) : homology_to_text(*complex));
    });
}

cubix_status cubix_cap_fill(const cubix_object* cubical, int n, int eps, int i,
                            uint64_t* out_total, uint64_t* out_unfillable) {
    return guarded([&] {
        const FillReport r = cap_fill_check(as_cubical(cubical), n, eps, i);
        if (out_total) *out_total = r.total;
        if (out_unfillable) *out_unfillable = r.unfillable;
    });
}

cubix_status cubix_horn_fill(const cubix_object* simplicial, int n, int k, uint64_t* out_total,
                             uint64_t* out_unfillable) {
    return guarded([&] {
        const HornFillReport r = inner_horn_fill_probe(as_simplicial(simplicial), n, k);
        if (out_total) *out_total = r.total;
        if (out_unfillable) *out_unfillable = r.unfillable;
    });
}

cubix_status cubix_nerve(const cubix_object* category, int k_max, cubix_object** out) {
    return guarded([&] { *out = wrap(hc_nerve(as_category(category), k_max)); });
}

cubix_status cubix_nerve_dg(const char* name, int p, int k_max, cubix_object** out) {
    return guarded([&] {
        require_semantic(name != nullptr, "null dg category name");
        const std::string n = name;
        DgCategory d = n == "arrow"     ? DgCategory::arrow(p)
                       : n == "trivial" ? DgCategory::trivial(p)
                                        : (fail_parse("unknown dg category '" + n
                                                      + "' (use arrow or trivial)"),
                                           DgCategory::trivial(p));
        *out = wrap(dg_category_nerve(d, k_max));
    });
}

cubix_status cubix_selftest(int quick, char** out_report, int* out_failures) {
    return guarded([&] {
        const auto checks = selftest_all(quick != 0);
        std::ostringstream os;
        int failures = 0;
        for (const auto& c : checks) {
            os << (c.passed ? "ok   " : "FAIL ") << c.name << "\n";
            if (!c.passed) ++failures;
        }
        if (out_report) *out_report = dup_string(os.str());
        if (out_failures) *out_failures = failures;
    });
}

} // extern "C"
