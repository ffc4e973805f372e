#include "cubix/format.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cubix/error.hpp"
#include "cubix/simplicial.hpp"

namespace cubix {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail_parse("malformed JSON");
    return j;
}

template <typename T>
T field(const json& j, const char* name) {
    if (!j.contains(name)) fail_parse(std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        fail_parse(std::string("field '") + name + "' has the wrong type");
    }
}

void check_version(const json& j) {
    if (field<int>(j, "format_version") != 1) fail_parse("unsupported format_version");
}

const Site* site_from_kind(const json& j, Flavor* flavor_out) {
    const std::string kind = field<std::string>(j, "kind");
    if (kind == "cubical") {
        const std::string fl = field<std::string>(j, "flavor");
        if (fl != "r" && fl != "c") fail_parse("flavor must be 'r' or 'c'");
        const Flavor f = flavor_from_char(fl[0]);
        if (flavor_out) *flavor_out = f;
        return &cubical_site(f);
    }
    if (kind == "simplicial") return &simplicial_site();
    fail_parse("unknown object kind '" + kind + "'");
}

// Action encoding: gen names d0/d1/s/g for cubical, d/s for simplicial;
// at_dim is the dimension of `cell`. Faces map down; the others map up.
std::pair<bool, int> decode_action(const Site& site, bool simplicial, const std::string& gen,
                                   int index, int at_dim) {
    if (simplicial) {
        if (gen == "d") return {false, index};
        if (gen == "s") return {true, index};
        fail_parse("unknown simplicial generator '" + gen + "'");
    }
    if (gen == "d0") return {false, face_action_index(0, index)};
    if (gen == "d1") return {false, face_action_index(1, index)};
    if (gen == "s") return {true, degen_action_index(index)};
    if (gen == "g") {
        if (&site == &cubical_site(Flavor::reduced))
            fail_parse("connection action in a reduced object");
        return {true, conn_action_index(at_dim, index)};
    }
    fail_parse("unknown cubical generator '" + gen + "'");
}

void encode_actions(json& out, const Presheaf& x) {
    const bool simplicial = is_simplicial(x);
    json actions = json::array();
    for (int d = 0; d <= x.trunc(); ++d)
        for (int c = 0; c < x.cells(d); ++c) {
            if (d >= 1)
                for (int k = 0; k < x.site().down_count(d); ++k) {
                    json a;
                    if (simplicial) {
                        a["gen"] = "d";
                        a["index"] = k;
                    } else {
                        a["gen"] = (k % 2) ? "d1" : "d0";
                        a["index"] = k / 2;
                    }
                    a["at_dim"] = d;
                    a["cell"] = x.label(d, c);
                    a["image"] = x.label(d - 1, x.down(d, k, c));
                    actions.push_back(std::move(a));
                }
            if (d < x.trunc())
                for (int k = 0; k < x.site().up_count(d); ++k) {
                    json a;
                    if (simplicial) {
                        a["gen"] = "s";
                        a["index"] = k;
                    } else if (k <= d) {
                        a["gen"] = "s";
                        a["index"] = k;
                    } else {
                        a["gen"] = "g";
                        a["index"] = k - d - 1;
                    }
                    a["at_dim"] = d;
                    a["cell"] = x.label(d, c);
                    a["image"] = x.label(d + 1, x.up(d, k, c));
                    actions.push_back(std::move(a));
                }
        }
    out["actions"] = std::move(actions);
}

json presheaf_to_json_obj(const Presheaf& x) {
    json j;
    j["format_version"] = 1;
    if (is_simplicial(x)) {
        j["kind"] = "simplicial";
    } else {
        j["kind"] = "cubical";
        j["flavor"] = to_string(cubical_flavor(x));
    }
    j["trunc"] = x.trunc();
    j["skeleton"] = x.skeleton();
    json cells;
    for (int d = 0; d <= x.trunc(); ++d) {
        json lst = json::array();
        for (int c = 0; c < x.cells(d); ++c) lst.push_back(x.label(d, c));
        cells[std::to_string(d)] = std::move(lst);
    }
    j["cells"] = std::move(cells);
    encode_actions(j, x);
    return j;
}

PshPtr presheaf_from_json_obj(const json& j) {
    check_version(j);
    Flavor flavor = Flavor::reduced;
    const Site* site = site_from_kind(j, &flavor);
    const bool simplicial = field<std::string>(j, "kind") == "simplicial";
    const int trunc = field<int>(j, "trunc");
    if (trunc < 0) fail_parse("negative trunc");
    PresheafBuilder bld(site, trunc);
    const json cells = field<json>(j, "cells");
    std::vector<std::map<std::string, int>> index(static_cast<std::size_t>(trunc) + 1);
    for (int d = 0; d <= trunc; ++d) {
        const std::string key = std::to_string(d);
        if (!cells.contains(key)) continue;
        for (const auto& lbl : cells.at(key)) {
            if (!lbl.is_string()) fail_parse("cell labels must be strings");
            const std::string s = lbl.get<std::string>();
            if (index[d].count(s)) fail_parse("duplicate cell label '" + s + "'");
            index[d][s] = bld.add_cell(d, s);
        }
    }
    for (const auto& a : field<json>(j, "actions")) {
        const std::string gen = field<std::string>(a, "gen");
        const int idx = field<int>(a, "index");
        const int at_dim = field<int>(a, "at_dim");
        if (at_dim < 0 || at_dim > trunc) fail_parse("action at_dim out of range");
        const auto [up, k] = decode_action(*site, simplicial, gen, idx, at_dim);
        const std::string cell = field<std::string>(a, "cell");
        const std::string image = field<std::string>(a, "image");
        const int img_dim = at_dim + (up ? 1 : -1);
        if (img_dim < 0 || img_dim > trunc) fail_parse("action image dimension out of range");
        if (!index[at_dim].count(cell)) fail_parse("unknown cell '" + cell + "'");
        if (!index[img_dim].count(image)) fail_parse("unknown cell '" + image + "'");
        const int kmax = up ? site->up_count(at_dim) : site->down_count(at_dim);
        if (k < 0 || k >= kmax) fail_parse("action index out of range");
        if (up)
            bld.set_up(at_dim, k, index[at_dim].at(cell), index[img_dim].at(image));
        else
            bld.set_down(at_dim, k, index[at_dim].at(cell), index[img_dim].at(image));
    }
    return bld.finish(); // validates the relation identities
}

} // namespace

std::string presheaf_to_json(const Presheaf& x) { return presheaf_to_json_obj(x).dump(1); }

PshPtr presheaf_from_json(const std::string& text) {
    return presheaf_from_json_obj(parse_json(text));
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

std::string map_to_json(const PresheafMap& f) {
    json j;
    j["format_version"] = 1;
    j["kind"] = is_simplicial(*f.src) ? "simplicial_map" : "cubical_map";
    j["src"] = presheaf_to_json_obj(*f.src);
    j["tgt"] = presheaf_to_json_obj(*f.tgt);
    json cells;
    for (int d = 0; d <= f.src->trunc(); ++d) {
        json lst = json::array();
        for (int c = 0; c < f.src->cells(d); ++c)
            lst.push_back(json::array({f.src->label(d, c), f.tgt->label(d, f.cells[d][c])}));
        cells[std::to_string(d)] = std::move(lst);
    }
    j["cells"] = std::move(cells);
    return j.dump(1);
}

PresheafMap map_from_json(const std::string& text) {
    const json j = parse_json(text);
    check_version(j);
    const std::string kind = field<std::string>(j, "kind");
    if (kind != "cubical_map" && kind != "simplicial_map") fail_parse("not a map object");
    PshPtr src = presheaf_from_json_obj(field<json>(j, "src"));
    PshPtr tgt = presheaf_from_json_obj(field<json>(j, "tgt"));
    PresheafMap f{src, tgt, {}};
    f.cells.resize(static_cast<std::size_t>(src->trunc()) + 1);
    for (int d = 0; d <= src->trunc(); ++d)
        f.cells[d].assign(static_cast<std::size_t>(src->cells(d)), -1);
    for (int d = 0; d <= src->trunc(); ++d) {
        const std::string key = std::to_string(d);
        const json cells = field<json>(j, "cells");
        if (!cells.contains(key)) continue;
        for (const auto& pair : cells.at(key)) {
            if (!pair.is_array() || pair.size() != 2) fail_parse("map entries are [from, to] pairs");
            const int c = src->label_index(d, pair.at(0).get<std::string>());
            const int v = tgt->label_index(d, pair.at(1).get<std::string>());
            if (c < 0 || v < 0) fail_parse("map entry names an unknown cell");
            f.cells[d][static_cast<std::size_t>(c)] = v;
        }
    }
    for (int d = 0; d <= src->trunc(); ++d)
        for (int c = 0; c < src->cells(d); ++c)
            if (f.cells[d][static_cast<std::size_t>(c)] < 0)
                fail_parse("map leaves a cell unassigned");
    f.validate();
    return f;
}

bool presheaves_structurally_equal(const Presheaf& a, const Presheaf& b) {
    return presheaf_to_json(a) == presheaf_to_json(b);
}

PresheafMap rebase_map(PresheafMap f, const PshPtr& src, const PshPtr& tgt) {
    if (src) {
        require_semantic(presheaves_structurally_equal(*f.src, *src),
                         "rebase: sources differ structurally");
        f.src = src;
    }
    if (tgt) {
        require_semantic(presheaves_structurally_equal(*f.tgt, *tgt),
                         "rebase: targets differ structurally");
        f.tgt = tgt;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Chain complexes
// ---------------------------------------------------------------------------

std::string chain_to_json(const FinChainComplex& a) {
    json j;
    j["format_version"] = 1;
    j["kind"] = "chain";
    if (a.ring().kind == Ring::Kind::integers) {
        j["ring"] = "Z";
    } else {
        j["ring"] = "Fp";
        j["p"] = a.ring().p;
    }
    json bases;
    for (int n = 0; n <= a.top_degree(); ++n) {
        json lst = json::array();
        for (int i = 0; i < a.rank(n); ++i) lst.push_back(a.basis_label(n, i));
        bases[std::to_string(n)] = std::move(lst);
    }
    j["bases"] = std::move(bases);
    json bnd = json::array();
    for (int n = 1; n <= a.top_degree(); ++n) {
        json entry;
        entry["degree"] = n;
        json triples = json::array();
        const Matrix m = a.boundary(n);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                if (m.at(r, c) != 0) triples.push_back(json::array({r, c, m.at(r, c)}));
        entry["entries"] = std::move(triples);
        bnd.push_back(std::move(entry));
    }
    j["boundaries"] = std::move(bnd);
    return j.dump(1);
}

ChPtr chain_from_json(const std::string& text) {
    const json j = parse_json(text);
    check_version(j);
    if (field<std::string>(j, "kind") != "chain") fail_parse("not a chain complex");
    Ring ring = Ring::Z();
    if (field<std::string>(j, "ring") == "Fp")
        ring = Ring::Fp(field<int>(j, "p"));
    else if (field<std::string>(j, "ring") != "Z")
        fail_parse("ring must be Z or Fp");
    const json bases_j = field<json>(j, "bases");
    std::vector<std::vector<std::string>> bases;
    for (int n = 0; bases_j.contains(std::to_string(n)); ++n) {
        std::vector<std::string> lst;
        for (const auto& s : bases_j.at(std::to_string(n))) lst.push_back(s.get<std::string>());
        bases.push_back(std::move(lst));
    }
    if (bases.empty()) bases.push_back({});
    std::vector<Matrix> d;
    for (std::size_t n = 1; n < bases.size(); ++n)
        d.emplace_back(static_cast<int>(bases[n - 1].size()), static_cast<int>(bases[n].size()));
    for (const auto& entry : field<json>(j, "boundaries")) {
        const int degree = field<int>(entry, "degree");
        if (degree < 1 || degree >= static_cast<int>(bases.size()))
            fail_parse("boundary degree out of range");
        for (const auto& t : field<json>(entry, "entries")) {
            if (!t.is_array() || t.size() != 3) fail_parse("boundary entries are [row, col, value]");
            const int r = t.at(0).get<int>();
            const int c = t.at(1).get<int>();
            if (r < 0 || r >= static_cast<int>(bases[degree - 1].size()) || c < 0
                || c >= static_cast<int>(bases[degree].size()))
                fail_parse("boundary entry out of range");
            d[degree - 1].at(r, c) = t.at(2).get<long long>();
        }
    }
    auto out = std::make_shared<FinChainComplex>(ring, std::move(bases), std::move(d));
    out->validate();
    return out;
}

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

std::string category_to_json(const CubicalCategory& c) {
    json j;
    j["format_version"] = 1;
    j["kind"] = "cubical_category";
    j["flavor"] = to_string(c.flavor());
    j["trunc"] = c.trunc();
    json objects = json::array();
    for (int x = 0; x < c.objects(); ++x) objects.push_back(c.object_name(x));
    j["objects"] = std::move(objects);
    json homs = json::array();
    for (int x = 0; x < c.objects(); ++x) {
        json row = json::array();
        for (int y = 0; y < c.objects(); ++y) row.push_back(presheaf_to_json_obj(*c.hom(x, y)));
        homs.push_back(std::move(row));
    }
    j["homs"] = std::move(homs);
    json units = json::array();
    for (int x = 0; x < c.objects(); ++x) units.push_back(c.hom(x, x)->label(0, c.unit_cell(x)));
    j["units"] = std::move(units);
    json comps = json::array();
    for (int x = 0; x < c.objects(); ++x)
        for (int y = 0; y < c.objects(); ++y)
            for (int z = 0; z < c.objects(); ++z) {
                json entry;
                entry["x"] = x;
                entry["y"] = y;
                entry["z"] = z;
                json cells = json::array();
                const DayTensor& d = c.day(x, y, z);
                for (int dim = 0; dim <= c.trunc(); ++dim)
                    for (int cl = 0; cl < d.object()->cells(dim); ++cl) {
                        const auto& r = d.rep(dim, cl);
                        json e;
                        e["dim"] = dim;
                        e["left_dim"] = r.p;
                        e["left"] = c.hom(x, y)->label(r.p, r.x);
                        e["right_dim"] = r.q;
                        e["right"] = c.hom(y, z)->label(r.q, r.y);
                        e["word"] = to_string(r.w);
                        e["image"] = c.hom(x, z)->label(dim, c.comp(x, y, z).apply(dim, cl));
                        cells.push_back(std::move(e));
                    }
                entry["cells"] = std::move(cells);
                comps.push_back(std::move(entry));
            }
    j["compositions"] = std::move(comps);
    return j.dump(1);
}

CatPtr category_from_json(const std::string& text) {
    const json j = parse_json(text);
    check_version(j);
    if (field<std::string>(j, "kind") != "cubical_category") fail_parse("not a cubical category");
    const std::string fl = field<std::string>(j, "flavor");
    if (fl != "r" && fl != "c") fail_parse("flavor must be 'r' or 'c'");
    CubicalQuiver q;
    q.flavor = flavor_from_char(fl[0]);
    q.trunc = field<int>(j, "trunc");
    for (const auto& s : field<json>(j, "objects")) q.objects.push_back(s.get<std::string>());
    const int n = static_cast<int>(q.objects.size());
    const json homs = field<json>(j, "homs");
    if (static_cast<int>(homs.size()) != n) fail_parse("hom table size mismatch");
    q.hom.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(homs.at(x).size()) != n) fail_parse("hom row size mismatch");
        for (int y = 0; y < n; ++y) q.hom[x].push_back(presheaf_from_json_obj(homs.at(x).at(y)));
    }
    std::vector<int> units;
    const json units_j = field<json>(j, "units");
    if (static_cast<int>(units_j.size()) != n) fail_parse("unit table size mismatch");
    for (int x = 0; x < n; ++x) {
        const int u = q.hom[x][x]->label_index(0, units_j.at(x).get<std::string>());
        if (u < 0) fail_parse("unit names an unknown 0-cell");
        units.push_back(u);
    }
    // compositions land in lookup tables keyed by class, via class_of on
    // the reconstructed Day tensors; every class must get exactly one value
    std::vector<std::vector<std::vector<std::unique_ptr<DayTensor>>>> days(
        static_cast<std::size_t>(n));
    std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> table(
        static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        days[x].resize(static_cast<std::size_t>(n));
        table[x].resize(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) {
            days[x][y].resize(static_cast<std::size_t>(n));
            table[x][y].resize(static_cast<std::size_t>(n));
            for (int z = 0; z < n; ++z) {
                days[x][y][z] = std::make_unique<DayTensor>(q.hom[x][y], q.hom[y][z]);
                table[x][y][z].resize(static_cast<std::size_t>(q.trunc) + 1);
                for (int dim = 0; dim <= q.trunc; ++dim)
                    table[x][y][z][dim].assign(
                        static_cast<std::size_t>(days[x][y][z]->object()->cells(dim)), -1);
            }
        }
    }
    for (const auto& entry : field<json>(j, "compositions")) {
        const int x = field<int>(entry, "x");
        const int y = field<int>(entry, "y");
        const int z = field<int>(entry, "z");
        if (x < 0 || y < 0 || z < 0 || x >= n || y >= n || z >= n)
            fail_parse("composition entry object out of range");
        for (const auto& e : field<json>(entry, "cells")) {
            const int dim = field<int>(e, "dim");
            const int p = field<int>(e, "left_dim");
            const int qd = field<int>(e, "right_dim");
            if (dim < 0 || dim > q.trunc) fail_parse("composition dim out of range");
            const int a = q.hom[x][y]->label_index(p, field<std::string>(e, "left"));
            const int b = q.hom[y][z]->label_index(qd, field<std::string>(e, "right"));
            if (a < 0 || b < 0) fail_parse("composition entry names an unknown cell");
            const CubeWord w = parse_word(q.flavor, field<std::string>(e, "word"), dim);
            if (w.tgt_dim() != p + qd) fail_parse("composition word has the wrong target");
            const int img = q.hom[x][z]->label_index(dim, field<std::string>(e, "image"));
            if (img < 0) fail_parse("composition image names an unknown cell");
            const int cls = days[x][y][z]->class_of(dim, p, a, qd, b, w);
            int& slot = table[x][y][z][dim][static_cast<std::size_t>(cls)];
            require_semantic(slot == -1 || slot == img,
                             "composition assignments disagree on a Day class");
            slot = img;
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int dim = 0; dim <= q.trunc; ++dim)
                    for (int v : table[x][y][z][dim])
                        require_semantic(v >= 0, "a Day class has no composition assignment");
    auto rule = [&table](int x, int y, int z, const DayTensor&, int dim, int cls) {
        return table[x][y][z][dim][static_cast<std::size_t>(cls)];
    };
    auto cat = std::make_shared<CubicalCategory>(std::move(q), std::move(units), rule);
    cat->validate();
    return cat;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

std::string group_to_text(const Ring& ring, const Homology& h) {
    std::vector<std::string> parts;
    if (h.free_rank > 0) {
        std::string base = ring.kind == Ring::Kind::integers ? "Z" : "F" + std::to_string(ring.p);
        parts.push_back(h.free_rank == 1 ? base : base + "^" + std::to_string(h.free_rank));
    }
    for (long long t : h.torsion) parts.push_back("Z/" + std::to_string(t));
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
    return out;
}

} // namespace

std::string homology_to_text(const FinChainComplex& a) {
    const auto h = homology(a);
    std::ostringstream os;
    for (std::size_t n = 0; n < h.size(); ++n) {
        if (n) os << ' ';
        os << 'H' << n << '=' << group_to_text(a.ring(), h[n]);
    }
    return os.str();
}

std::string homology_to_json(const FinChainComplex& a) {
    const auto h = homology(a);
    json j;
    j["ring"] = a.ring().to_string();
    json degrees = json::array();
    for (std::size_t n = 0; n < h.size(); ++n) {
        json e;
        e["degree"] = n;
        e["free_rank"] = h[n].free_rank;
        e["torsion"] = h[n].torsion;
        degrees.push_back(std::move(e));
    }
    j["groups"] = std::move(degrees);
    return j.dump(1);
}

std::string summary_to_text(const Presheaf& x) {
    std::ostringstream os;
    os << (is_simplicial(x) ? "simplicial" : (cubical_flavor(x) == Flavor::reduced
                                                  ? "cubical (reduced)"
                                                  : "cubical (connections)"))
       << " trunc=" << x.trunc() << " skeleton=" << x.skeleton() << '\n';
    for (int d = 0; d <= x.trunc(); ++d)
        os << "dim " << d << ": " << x.cells(d) << " cells, " << x.nondegenerate_count(d)
           << " nondegenerate\n";
    return os.str();
}

std::string summary_to_json(const Presheaf& x) {
    json j;
    j["kind"] = is_simplicial(x) ? "simplicial" : "cubical";
    if (!is_simplicial(x)) j["flavor"] = to_string(cubical_flavor(x));
    j["trunc"] = x.trunc();
    j["skeleton"] = x.skeleton();
    json cells = json::array(), nondeg = json::array();
    for (int d = 0; d <= x.trunc(); ++d) {
        cells.push_back(x.cells(d));
        nondeg.push_back(x.nondegenerate_count(d));
    }
    j["cells"] = std::move(cells);
    j["nondegenerate"] = std::move(nondeg);
    return j.dump(1);
}

std::string json_kind(const std::string& text) {
    const json j = parse_json(text);
    return field<std::string>(j, "kind");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_io("cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail_io("failed writing '" + path + "'");
}

} // namespace cubix
