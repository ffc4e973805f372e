#include "cubix/enriched.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <tuple>

#include "cubix/error.hpp"
#include "cubix/limits.hpp"

namespace cubix {

// ---------------------------------------------------------------------------
// Quivers and categories
// ---------------------------------------------------------------------------

void CubicalQuiver::validate() const {
    const std::size_t n = objects.size();
    require_semantic(hom.size() == n, "quiver hom table size");
    for (const auto& row : hom) {
        require_semantic(row.size() == n, "quiver hom row size");
        for (const auto& h : row) {
            require_semantic(h != nullptr, "missing hom object");
            require_semantic(is_cubical(*h), "quiver hom must be cubical");
            require_semantic(cubical_flavor(*h) == flavor, "quiver hom flavor mismatch");
            require_semantic(h->trunc() == trunc, "quiver hom truncation mismatch");
        }
    }
}

namespace {

PshPtr memo_empty(Flavor f, int trunc) {
    static std::map<std::pair<int, int>, PshPtr> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({int(f), trunc});
    if (it != cache.end()) return it->second;
    return cache.emplace(std::make_pair(int(f), trunc), empty_presheaf(&cubical_site(f), trunc))
        .first->second;
}

// The unique degeneracy word box^dim -> box^0.
CubeWord collapse_word(Flavor f, int dim) {
    std::vector<int> degens(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) degens[static_cast<std::size_t>(i)] = i;
    return CubeWord(f, dim, {}, {}, std::move(degens));
}

} // namespace

CubicalCategory::CubicalCategory(CubicalQuiver quiver, std::vector<int> units,
                                 const CompRule& rule)
    : quiver_(std::move(quiver)), units_(std::move(units)) {
    quiver_.validate();
    const int n = objects();
    require_semantic(static_cast<int>(units_.size()) == n, "unit table size");
    for (int x = 0; x < n; ++x)
        require_semantic(units_[x] >= 0 && units_[x] < quiver_.hom[x][x]->cells(0),
                         "unit cell out of range");
    days_.resize(n);
    comps_.resize(n);
    for (int x = 0; x < n; ++x) {
        days_[x].resize(n);
        comps_[x].resize(n);
        for (int y = 0; y < n; ++y) {
            days_[x][y].resize(n);
            comps_[x][y].resize(n);
            for (int z = 0; z < n; ++z) {
                days_[x][y][z] = std::make_unique<DayTensor>(quiver_.hom[x][y], quiver_.hom[y][z]);
                const DayTensor& d = *days_[x][y][z];
                PresheafMap m{d.object(), quiver_.hom[x][z], {}};
                m.cells.resize(static_cast<std::size_t>(trunc()) + 1);
                for (int dim = 0; dim <= trunc(); ++dim) {
                    m.cells[dim].resize(static_cast<std::size_t>(d.object()->cells(dim)));
                    for (int c = 0; c < d.object()->cells(dim); ++c)
                        m.cells[dim][static_cast<std::size_t>(c)] = rule(x, y, z, d, dim, c);
                }
                m.validate();
                comps_[x][y][z] = std::move(m);
            }
        }
    }
}

int CubicalCategory::compose_cells(int x, int y, int z, int dim_a, int a, int dim_b, int b) const {
    require_semantic(dim_a + dim_b <= trunc(), "composite dimension above truncation");
    const DayTensor& d = day(x, y, z);
    const int cls = d.class_of(dim_a + dim_b, dim_a, a, dim_b, b,
                               CubeWord::identity(flavor(), dim_a + dim_b));
    return comps_[x][y][z].apply(dim_a + dim_b, cls);
}

int CubicalCategory::degenerate_unit(int x, int dim) const {
    if (dim == 0) return units_[x];
    return act_word(*hom(x, x), collapse_word(flavor(), dim), units_[x]);
}

void CubicalCategory::validate() const {
    const int n = objects();
    // unit laws
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int dim = 0; dim <= trunc(); ++dim)
                for (int h = 0; h < hom(x, y)->cells(dim); ++h) {
                    require_semantic(compose_cells(x, x, y, 0, units_[x], dim, h) == h,
                                     "left unit law fails");
                    require_semantic(compose_cells(x, y, y, dim, h, 0, units_[y]) == h,
                                     "right unit law fails");
                }
    // associativity on flat triples
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int w = 0; w < n; ++w) {
                    const PshPtr& a = hom(x, y);
                    const PshPtr& b = hom(y, z);
                    const PshPtr& c = hom(z, w);
                    for (int da = 0; da <= a->skeleton(); ++da)
                        for (int db = 0; db <= b->skeleton(); ++db)
                            for (int dc = 0; dc <= c->skeleton(); ++dc) {
                                if (da + db > trunc() || db + dc > trunc()
                                    || da + db + dc > trunc())
                                    continue;
                                for (int ca = 0; ca < a->cells(da); ++ca)
                                    for (int cb = 0; cb < b->cells(db); ++cb)
                                        for (int cc = 0; cc < c->cells(dc); ++cc) {
                                            const int ab = compose_cells(x, y, z, da, ca, db, cb);
                                            const int bc = compose_cells(y, z, w, db, cb, dc, cc);
                                            for (int dim = 0; dim <= trunc(); ++dim)
                                                for (const CubeWord& med :
                                                     hom_table(flavor(), dim, da + db + dc).words) {
                                                    const int lhs = comps_[x][z][w].apply(
                                                        dim, day(x, z, w).class_of(dim, da + db, ab,
                                                                                   dc, cc, med));
                                                    const int rhs = comps_[x][y][w].apply(
                                                        dim, day(x, y, w).class_of(dim, da, ca,
                                                                                   db + dc, bc, med));
                                                    require_semantic(
                                                        lhs == rhs,
                                                        "associativity fails on a flat triple");
                                                }
                                        }
                            }
                }
}

void CubicalFunctor::validate() const {
    const int n = src->objects();
    require_semantic(static_cast<int>(object_map.size()) == n, "functor object map size");
    for (int x : object_map) require_semantic(x >= 0 && x < tgt->objects(), "object image range");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const PresheafMap& m = hom_maps[x][y];
            require_semantic(m.src.get() == src->hom(x, y).get()
                                 && m.tgt.get() == tgt->hom(object_map[x], object_map[y]).get(),
                             "functor hom map endpoints");
            m.validate();
        }
    // units
    for (int x = 0; x < n; ++x)
        require_semantic(hom_maps[x][x].apply(0, src->unit_cell(x))
                             == tgt->unit_cell(object_map[x]),
                         "functor does not preserve units");
    // composition squares on Day class representatives
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const DayTensor& ds = src->day(x, y, z);
                const DayTensor& dt = tgt->day(object_map[x], object_map[y], object_map[z]);
                for (int dim = 0; dim <= src->trunc(); ++dim)
                    for (int c = 0; c < ds.object()->cells(dim); ++c) {
                        const auto& r = ds.rep(dim, c);
                        const int lhs =
                            hom_maps[x][z].apply(dim, src->comp(x, y, z).apply(dim, c));
                        const int cls = dt.class_of(dim, r.p, hom_maps[x][y].apply(r.p, r.x), r.q,
                                                    hom_maps[y][z].apply(r.q, r.y), r.w);
                        const int rhs =
                            tgt->comp(object_map[x], object_map[y], object_map[z]).apply(dim, cls);
                        require_semantic(lhs == rhs, "functor breaks a composition square");
                    }
            }
}

CubicalFunctor functor_compose(const CubicalFunctor& g, const CubicalFunctor& f) {
    require_semantic(f.tgt.get() == g.src.get(), "functors not composable");
    CubicalFunctor out{f.src, g.tgt, {}, {}};
    const int n = f.src->objects();
    out.object_map.resize(static_cast<std::size_t>(n));
    out.hom_maps.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) out.object_map[x] = g.object_map[f.object_map[x]];
    for (int x = 0; x < n; ++x) {
        out.hom_maps[x].resize(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y)
            out.hom_maps[x][y] =
                compose(g.hom_maps[f.object_map[x]][f.object_map[y]], f.hom_maps[x][y]);
    }
    return out;
}

bool functors_equal(const CubicalFunctor& a, const CubicalFunctor& b) {
    if (a.object_map != b.object_map) return false;
    for (std::size_t x = 0; x < a.hom_maps.size(); ++x)
        for (std::size_t y = 0; y < a.hom_maps[x].size(); ++y)
            if (a.hom_maps[x][y].cells != b.hom_maps[x][y].cells) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Small constructions
// ---------------------------------------------------------------------------

CatPtr point_category(Flavor f, int trunc) {
    CubicalQuiver q{f, trunc, {"0"}, {{cubical_representable(f, 0, trunc)}}};
    auto rule = [](int, int, int, const DayTensor&, int, int) { return 0; };
    return std::make_shared<CubicalCategory>(std::move(q), std::vector<int>{0}, rule);
}

CatPtr arrow_category(const PshPtr& x) {
    const Flavor f = cubical_flavor(*x);
    const int trunc = x->trunc();
    PshPtr unit = cubical_representable(f, 0, trunc);
    CubicalQuiver q{f,
                    trunc,
                    {"0", "1"},
                    {{unit, x}, {memo_empty(f, trunc), unit}}};
    auto rule = [q](int ox, int oy, int oz, const DayTensor& d, int dim, int cls) {
        const auto& r = d.rep(dim, cls);
        if (ox == oy) return act_word(*q.hom[oy][oz], r.w, r.y);
        return act_word(*q.hom[ox][oy], r.w, r.x);
    };
    CubicalQuiver q2 = q;
    return std::make_shared<CubicalCategory>(std::move(q2), std::vector<int>{0, 0}, rule);
}

// ---------------------------------------------------------------------------
// Iterated Day tensors (for the free category)
// ---------------------------------------------------------------------------

namespace {

struct TensorTree {
    PshPtr object;
    std::shared_ptr<DayTensor> day; // null at leaves
    std::shared_ptr<TensorTree> lhs, rhs;

    static std::shared_ptr<TensorTree> leaf(PshPtr x) {
        auto t = std::make_shared<TensorTree>();
        t->object = std::move(x);
        return t;
    }
    static std::shared_ptr<TensorTree> node(std::shared_ptr<TensorTree> a,
                                            std::shared_ptr<TensorTree> b) {
        auto t = std::make_shared<TensorTree>();
        t->day = std::make_shared<DayTensor>(a->object, b->object);
        t->object = t->day->object();
        t->lhs = std::move(a);
        t->rhs = std::move(b);
        return t;
    }

    int leaves() const { return day ? lhs->leaves() + rhs->leaves() : 1; }

    // (leaf cells with their dims, mediating word dim -> sum of leaf dims)
    std::pair<std::vector<std::pair<int, int>>, CubeWord> flatten(int dim, int cell) const {
        const Flavor f = cubical_flavor(*object);
        if (!day) return {{{dim, cell}}, CubeWord::identity(f, dim)};
        const auto& r = day->rep(dim, cell);
        auto [tl, wa] = lhs->flatten(r.p, r.x);
        auto [tr, wb] = rhs->flatten(r.q, r.y);
        tl.insert(tl.end(), tr.begin(), tr.end());
        return {std::move(tl), compose(tensor_word(wa, wb), r.w)};
    }

    int class_of_flat(int dim, std::span<const std::pair<int, int>> tuple,
                      const CubeWord& w) const {
        if (!day) {
            require_semantic(tuple.size() == 1, "flat tuple arity mismatch");
            return act_word(*object, w, tuple[0].second);
        }
        const Flavor f = cubical_flavor(*object);
        const int nl = lhs->leaves();
        int suml = 0, sumr = 0;
        for (int t = 0; t < nl; ++t) suml += tuple[static_cast<std::size_t>(t)].first;
        for (std::size_t t = static_cast<std::size_t>(nl); t < tuple.size(); ++t)
            sumr += tuple[t].first;
        const int lc = lhs->class_of_flat(suml, tuple.subspan(0, static_cast<std::size_t>(nl)),
                                          CubeWord::identity(f, suml));
        const int rc = rhs->class_of_flat(sumr, tuple.subspan(static_cast<std::size_t>(nl)),
                                          CubeWord::identity(f, sumr));
        return day->class_of(dim, suml, lc, sumr, rc, w);
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Free categories
// ---------------------------------------------------------------------------

CatPtr free_category(const CubicalQuiver& q, int path_bound) {
    q.validate();
    const Flavor f = q.flavor;
    const int trunc = q.trunc;
    const int n = static_cast<int>(q.objects.size());
    auto edge_nonempty = [&](int x, int y) {
        for (int d = 0; d <= trunc; ++d)
            if (q.hom[x][y]->cells(d) > 0) return true;
        return false;
    };
    // paths[x][y]: vertex sequences x..y of length <= path_bound through
    // nonempty edges; ordered by length then lexicographically
    std::vector<std::vector<std::vector<std::vector<int>>>> paths(
        static_cast<std::size_t>(n),
        std::vector<std::vector<std::vector<int>>>(static_cast<std::size_t>(n)));
    std::vector<std::vector<int>> frontier;
    for (int x = 0; x < n; ++x) {
        paths[x][x].push_back({x});
        frontier.push_back({x});
    }
    for (int len = 1; len <= path_bound + 1; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (int y = 0; y < n; ++y)
                if (edge_nonempty(p.back(), y)) {
                    auto ext = p;
                    ext.push_back(y);
                    if (len > path_bound)
                        fail_guard("free category: a path exceeds the bound (cyclic quiver?)");
                    paths[ext.front()][y].push_back(ext);
                    next.push_back(std::move(ext));
                }
        frontier = std::move(next);
    }

    // tensor tree and coproduct per hom
    struct HomData {
        std::vector<std::shared_ptr<TensorTree>> trees;
        std::vector<std::map<std::vector<int>, int>> dummy;
        PshPtr object;
        std::vector<PresheafMap> injections;
        // (dim, coproduct cell) -> (path index, local cell)
        std::vector<std::vector<std::pair<int, int>>> locate;
    };
    PshPtr unit = cubical_representable(f, 0, trunc);
    auto tree_of_path = [&](const std::vector<int>& p) -> std::shared_ptr<TensorTree> {
        if (p.size() == 1) return TensorTree::leaf(unit);
        auto t = TensorTree::leaf(q.hom[p[0]][p[1]]);
        for (std::size_t s = 1; s + 1 < p.size(); ++s)
            t = TensorTree::node(t, TensorTree::leaf(q.hom[p[s]][p[s + 1]]));
        return t;
    };
    std::vector<std::vector<HomData>> data(static_cast<std::size_t>(n),
                                           std::vector<HomData>(static_cast<std::size_t>(n)));
    std::vector<std::vector<std::map<std::vector<int>, int>>> path_index(
        static_cast<std::size_t>(n),
        std::vector<std::map<std::vector<int>, int>>(static_cast<std::size_t>(n)));
    CubicalQuiver out_quiver{f, trunc, q.objects, {}};
    out_quiver.hom.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        out_quiver.hom[x].resize(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) {
            HomData& hd = data[x][y];
            for (std::size_t pi = 0; pi < paths[x][y].size(); ++pi) {
                hd.trees.push_back(tree_of_path(paths[x][y][pi]));
                path_index[x][y][paths[x][y][pi]] = static_cast<int>(pi);
            }
            if (hd.trees.empty()) {
                hd.object = memo_empty(f, trunc);
            } else {
                std::vector<PshPtr> parts;
                for (const auto& t : hd.trees) parts.push_back(t->object);
                auto co = coproduct(parts);
                hd.object = co.object;
                hd.injections = std::move(co.injections);
            }
            hd.locate.resize(static_cast<std::size_t>(trunc) + 1);
            for (int d = 0; d <= trunc; ++d)
                hd.locate[d].assign(static_cast<std::size_t>(hd.object->cells(d)), {-1, -1});
            for (std::size_t pi = 0; pi < hd.injections.size(); ++pi)
                for (int d = 0; d <= trunc; ++d)
                    for (std::size_t c = 0; c < hd.injections[pi].cells[d].size(); ++c)
                        hd.locate[d][static_cast<std::size_t>(hd.injections[pi].cells[d][c])] = {
                            static_cast<int>(pi), static_cast<int>(c)};
            out_quiver.hom[x][y] = hd.object;
        }
    }
    std::vector<int> units;
    for (int x = 0; x < n; ++x) {
        // the unit is the 0-cell of the length-0 path summand
        const int pi = path_index[x][x].at({x});
        units.push_back(data[x][x].injections[static_cast<std::size_t>(pi)].cells[0][0]);
    }
    const Flavor flavor = f;
    auto rule = [data = std::move(data), path_index, paths, flavor](
                    int x, int y, int z, const DayTensor& d, int dim, int cls) -> int {
        const auto& r = d.rep(dim, cls);
        const auto [pa, la] = data[x][y].locate[r.p][static_cast<std::size_t>(r.x)];
        const auto [pb, lb] = data[y][z].locate[r.q][static_cast<std::size_t>(r.y)];
        auto [ta, wa] = data[x][y].trees[static_cast<std::size_t>(pa)]->flatten(r.p, la);
        auto [tb, wb] = data[y][z].trees[static_cast<std::size_t>(pb)]->flatten(r.q, lb);
        // concatenated path
        std::vector<int> joined = paths[x][y][static_cast<std::size_t>(pa)];
        const auto& second = paths[y][z][static_cast<std::size_t>(pb)];
        joined.insert(joined.end(), second.begin() + 1, second.end());
        const int pj = path_index[x][z].at(joined);
        // A unit path contributes a point leaf that the joined tree lacks;
        // collapse its (possibly degenerate) dimension into the word.
        const bool a_is_unit_path = paths[x][y][static_cast<std::size_t>(pa)].size() == 1;
        const bool b_is_unit_path = second.size() == 1;
        CubeWord w = compose(tensor_word(wa, wb), r.w);
        int sum_a = 0, sum_b = 0;
        for (const auto& [dd, cc] : ta) sum_a += dd;
        for (const auto& [dd, cc] : tb) sum_b += dd;
        std::vector<std::pair<int, int>> tuple;
        if (a_is_unit_path && b_is_unit_path) {
            w = compose(tensor_word(collapse_word(flavor, sum_a), collapse_word(flavor, sum_b)), w);
            tuple = {{0, 0}};
        } else if (a_is_unit_path) {
            w = compose(tensor_word(collapse_word(flavor, sum_a), CubeWord::identity(flavor, sum_b)),
                        w);
            tuple = tb;
        } else if (b_is_unit_path) {
            w = compose(tensor_word(CubeWord::identity(flavor, sum_a), collapse_word(flavor, sum_b)),
                        w);
            tuple = ta;
        } else {
            tuple = ta;
            tuple.insert(tuple.end(), tb.begin(), tb.end());
        }
        const int local = data[x][z].trees[static_cast<std::size_t>(pj)]->class_of_flat(dim, tuple, w);
        return data[x][z]
            .injections[static_cast<std::size_t>(pj)]
            .cells[dim][static_cast<std::size_t>(local)];
    };
    return std::make_shared<CubicalCategory>(std::move(out_quiver), std::move(units), rule);
}

// ---------------------------------------------------------------------------
// Discrete enrichment and the underlying category
// ---------------------------------------------------------------------------

CatPtr discrete_enrich(const FinCategory& c, Flavor flavor, int trunc) {
    c.validate();
    const int n = c.objects();
    // morphism lists per ordered pair
    std::vector<std::vector<std::vector<int>>> mors(
        static_cast<std::size_t>(n), std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
    for (int m = 0; m < c.morphisms(); ++m) mors[c.mor_src[m]][c.mor_tgt[m]].push_back(m);
    CubicalQuiver q{flavor, trunc, c.object_names, {}};
    q.hom.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        q.hom[x].resize(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) {
            PresheafBuilder bld(&cubical_site(flavor), trunc);
            for (int d = 0; d <= trunc; ++d)
                for (int m : mors[x][y]) bld.add_cell(d, c.mor_names[m]);
            for (int d = 0; d <= trunc; ++d)
                for (std::size_t i = 0; i < mors[x][y].size(); ++i) {
                    if (d >= 1)
                        for (int k = 0; k < cubical_site(flavor).down_count(d); ++k)
                            bld.set_down(d, k, static_cast<int>(i), static_cast<int>(i));
                    if (d < trunc)
                        for (int k = 0; k < cubical_site(flavor).up_count(d); ++k)
                            bld.set_up(d, k, static_cast<int>(i), static_cast<int>(i));
                }
            q.hom[x][y] = bld.finish();
        }
    }
    std::vector<int> units;
    for (int x = 0; x < n; ++x) {
        const auto& v = mors[x][x];
        units.push_back(static_cast<int>(
            std::find(v.begin(), v.end(), c.identity[x]) - v.begin()));
    }
    auto rule = [c, mors](int x, int y, int z, const DayTensor& d, int dim, int cls) -> int {
        (void)dim;
        const auto& r = d.rep(dim, cls);
        const int f = mors[x][y][static_cast<std::size_t>(r.x)];
        const int g = mors[y][z][static_cast<std::size_t>(r.y)];
        const int fg = c.then(f, g);
        const auto& v = mors[x][z];
        return static_cast<int>(std::find(v.begin(), v.end(), fg) - v.begin());
    };
    return std::make_shared<CubicalCategory>(std::move(q), std::move(units), rule);
}

FinCategory underlying(const CubicalCategory& c) {
    FinCategory out;
    const int n = c.objects();
    for (int x = 0; x < n; ++x) out.object_names.push_back(c.object_name(x));
    std::vector<std::vector<std::vector<int>>> ids(
        static_cast<std::size_t>(n), std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int i = 0; i < c.hom(x, y)->cells(0); ++i) {
                ids[x][y].push_back(out.morphisms());
                out.mor_src.push_back(x);
                out.mor_tgt.push_back(y);
                out.mor_names.push_back(c.object_name(x) + ">" + c.object_name(y) + "#"
                                        + c.hom(x, y)->label(0, i));
            }
    out.identity.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) out.identity[x] = ids[x][x][static_cast<std::size_t>(c.unit_cell(x))];
    out.then_table.assign(out.mor_src.size(), std::vector<int>(out.mor_src.size(), -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (std::size_t i = 0; i < ids[x][y].size(); ++i)
                    for (std::size_t j = 0; j < ids[y][z].size(); ++j)
                        out.then_table[ids[x][y][i]][ids[y][z][j]] =
                            ids[x][z][static_cast<std::size_t>(c.compose_cells(
                                x, y, z, 0, static_cast<int>(i), 0, static_cast<int>(j)))];
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// The cosimplicial categories W_n
// ---------------------------------------------------------------------------

namespace {

CatPtr build_W(int n, int trunc) {
    const Flavor f = Flavor::connections;
    CubicalQuiver q{f, trunc, {}, {}};
    for (int i = 0; i <= n; ++i) q.objects.push_back(std::to_string(i));
    q.hom.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        q.hom[i].resize(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            if (i > j)
                q.hom[i][j] = memo_empty(f, trunc);
            else if (i == j)
                q.hom[i][j] = cubical_representable(f, 0, trunc);
            else
                q.hom[i][j] = cubical_representable(f, j - i - 1, trunc);
        }
    }
    std::vector<int> units(static_cast<std::size_t>(n) + 1, 0);
    auto rule = [f](int x, int y, int z, const DayTensor& d, int dim, int cls) -> int {
        const auto& r = d.rep(dim, cls);
        if (x == y) return act_word(*d.right(), r.w, r.y);
        if (y == z) return act_word(*d.left(), r.w, r.x);
        // cells are words into the representing cubes
        const CubeWord& u = hom_table(f, r.p, y - x - 1).words[static_cast<std::size_t>(r.x)];
        const CubeWord& v = hom_table(f, r.q, z - y - 1).words[static_cast<std::size_t>(r.y)];
        CubeWord face(f, z - x - 2, {{1, y - x - 1}}, {}, {});
        return hom_index(compose(face, compose(tensor_word(u, v), r.w)));
    };
    return std::make_shared<CubicalCategory>(std::move(q), std::move(units), rule);
}

} // namespace

CatPtr W(int n, int trunc) {
    static std::map<std::pair<int, int>, CatPtr> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, trunc});
    if (it != cache.end()) return it->second;
    return cache.emplace(std::make_pair(n, trunc), build_W(n, trunc)).first->second;
}

CubicalFunctor W_coface(int i, int n, int trunc) {
    require_semantic(i >= 0 && i <= n + 1, "coface index out of range");
    const Flavor f = Flavor::connections;
    CubicalFunctor out{W(n, trunc), W(n + 1, trunc), {}, {}};
    for (int j = 0; j <= n; ++j) out.object_map.push_back(j < i ? j : j + 1);
    out.hom_maps.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        out.hom_maps[j].resize(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            if (j < i && i <= k && j < k) {
                CubeWord face(f, k - j - 1, {{0, i - j - 1}}, {}, {});
                out.hom_maps[j][k] = representable_map(face, trunc);
            } else {
                out.hom_maps[j][k] = identity_map(out.src->hom(j, k));
            }
        }
    }
    out.validate();
    return out;
}

CubicalFunctor W_codegeneracy(int i, int n, int trunc) {
    require_semantic(n >= 1 && i >= 0 && i <= n - 1, "codegeneracy index out of range");
    const Flavor f = Flavor::connections;
    CubicalFunctor out{W(n, trunc), W(n - 1, trunc), {}, {}};
    for (int j = 0; j <= n; ++j) out.object_map.push_back(j <= i ? j : j - 1);
    auto empty_into = [&](const PshPtr& src, const PshPtr& tgt) {
        PresheafMap m{src, tgt, {}};
        m.cells.assign(static_cast<std::size_t>(trunc) + 1, {});
        return m;
    };
    out.hom_maps.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        out.hom_maps[j].resize(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            const int oj = out.object_map[j], ok = out.object_map[k];
            if (j > k) {
                // the source hom is empty; the target may collapse to a unit
                out.hom_maps[j][k] = empty_into(out.src->hom(j, k), out.tgt->hom(oj, ok));
            } else if (j == k || k <= i || j >= i + 1 || (j == i && k == i + 1)) {
                out.hom_maps[j][k] = identity_map(out.src->hom(j, k));
            } else if (j < i && k > i + 1) {
                CubeWord conn(f, k - j - 1, {}, {i - j - 1}, {});
                out.hom_maps[j][k] = representable_map(conn, trunc);
            } else if (j == i) {
                CubeWord degen(f, k - j - 1, {}, {}, {0});
                out.hom_maps[j][k] = representable_map(degen, trunc);
            } else {
                // k == i + 1, j < i
                CubeWord degen(f, k - j - 1, {}, {}, {i - j - 1});
                out.hom_maps[j][k] = representable_map(degen, trunc);
            }
        }
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Functor enumeration
// ---------------------------------------------------------------------------

std::vector<CubicalFunctor> enumerate_functors(const CatPtr& a, const CatPtr& b) {
    require_semantic(a->flavor() == b->flavor() && a->trunc() == b->trunc(),
                     "functor enumeration across flavors or truncations");
    const int an = a->objects();
    const int bn = b->objects();
    std::uint64_t total_obj = 1;
    for (int i = 0; i < an; ++i) {
        total_obj *= static_cast<std::uint64_t>(bn);
        if (total_obj > limits().max_candidates)
            fail_guard("functor enumeration: object maps exceed guard");
    }
    std::vector<CubicalFunctor> out;
    std::vector<int> object_map(static_cast<std::size_t>(an), 0);
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < an; ++x)
        for (int y = 0; y < an; ++y) pairs.emplace_back(x, y);

    auto try_object_map = [&]() {
        // candidates per pair, with units pinned
        std::vector<std::vector<PresheafMap>> cand(pairs.size());
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            const auto [x, y] = pairs[t];
            MapSearchOptions opt;
            std::vector<std::vector<int>> seed(static_cast<std::size_t>(a->trunc()) + 1);
            for (int d = 0; d <= a->trunc(); ++d)
                seed[d].assign(static_cast<std::size_t>(a->hom(x, y)->cells(d)), -1);
            if (x == y) seed[0][static_cast<std::size_t>(a->unit_cell(x))] = b->unit_cell(object_map[x]);
            opt.seed = &seed;
            cand[t] = enumerate_maps(a->hom(x, y), b->hom(object_map[x], object_map[y]), opt);
            if (cand[t].empty()) return;
        }
        // triples checkable once their three pairs are assigned
        auto pair_pos = [&](int x, int y) { return static_cast<std::size_t>(x * an + y); };
        std::vector<std::vector<std::array<int, 3>>> ready(pairs.size());
        for (int x = 0; x < an; ++x)
            for (int y = 0; y < an; ++y)
                for (int z = 0; z < an; ++z) {
                    const std::size_t last = std::max({pair_pos(x, y), pair_pos(y, z), pair_pos(x, z)});
                    ready[last].push_back({x, y, z});
                }
        std::vector<int> chosen(pairs.size(), -1);
        auto square_ok = [&](int x, int y, int z) {
            const PresheafMap& fxy = cand[pair_pos(x, y)][static_cast<std::size_t>(chosen[pair_pos(x, y)])];
            const PresheafMap& fyz = cand[pair_pos(y, z)][static_cast<std::size_t>(chosen[pair_pos(y, z)])];
            const PresheafMap& fxz = cand[pair_pos(x, z)][static_cast<std::size_t>(chosen[pair_pos(x, z)])];
            const DayTensor& ds = a->day(x, y, z);
            const DayTensor& dt = b->day(object_map[x], object_map[y], object_map[z]);
            for (int dim = 0; dim <= a->trunc(); ++dim)
                for (int c = 0; c < ds.object()->cells(dim); ++c) {
                    const auto& r = ds.rep(dim, c);
                    const int lhs = fxz.apply(dim, a->comp(x, y, z).apply(dim, c));
                    const int cls =
                        dt.class_of(dim, r.p, fxy.apply(r.p, r.x), r.q, fyz.apply(r.q, r.y), r.w);
                    if (lhs != b->comp(object_map[x], object_map[y], object_map[z]).apply(dim, cls))
                        return false;
                }
            return true;
        };
        auto rec = [&](auto&& self, std::size_t t) -> void {
            if (t == pairs.size()) {
                CubicalFunctor fn{a, b, object_map, {}};
                fn.hom_maps.resize(static_cast<std::size_t>(an));
                for (int x = 0; x < an; ++x) {
                    fn.hom_maps[x].resize(static_cast<std::size_t>(an));
                    for (int y = 0; y < an; ++y)
                        fn.hom_maps[x][y] =
                            cand[pair_pos(x, y)][static_cast<std::size_t>(chosen[pair_pos(x, y)])];
                }
                out.push_back(std::move(fn));
                return;
            }
            for (std::size_t i = 0; i < cand[t].size(); ++i) {
                chosen[t] = static_cast<int>(i);
                bool ok = true;
                for (const auto& tr : ready[t])
                    if (!square_ok(tr[0], tr[1], tr[2])) {
                        ok = false;
                        break;
                    }
                if (ok) self(self, t + 1);
            }
            chosen[t] = -1;
        };
        rec(rec, 0);
    };

    auto loop = [&](auto&& self, int x) -> void {
        if (x == an) {
            try_object_map();
            return;
        }
        for (int v = 0; v < bn; ++v) {
            object_map[static_cast<std::size_t>(x)] = v;
            self(self, x + 1);
        }
    };
    loop(loop, 0);
    return out;
}

// ---------------------------------------------------------------------------
// The homotopy coherent nerve
// ---------------------------------------------------------------------------

namespace {

struct NerveCell {
    std::vector<int> chain;          // k+1 objects
    std::vector<std::vector<int>> c; // c[i][j-i-1] for j > i

    bool operator<(const NerveCell& o) const { return std::tie(chain, c) < std::tie(o.chain, o.c); }
    bool operator==(const NerveCell& o) const { return chain == o.chain && c == o.c; }
};

std::string nerve_label(const CubicalCategory& cat, const NerveCell& cell) {
    std::string s;
    for (std::size_t i = 0; i < cell.chain.size(); ++i) {
        if (i) s += '.';
        s += cat.object_name(cell.chain[i]);
    }
    for (const auto& row : cell.c)
        for (int v : row) s += "|" + std::to_string(v);
    return s;
}

} // namespace

PshPtr hc_nerve(const CatPtr& cat, int k_max) {
    require_semantic(cat->flavor() == Flavor::connections, "nerve needs the connections flavor");
    require_semantic(cat->trunc() >= std::max(0, k_max - 1),
                     "nerve needs hom truncation at least k_max - 1");
    const int n = cat->objects();

    // enumerate cells per level
    std::vector<std::vector<NerveCell>> cells(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        std::vector<int> chain(static_cast<std::size_t>(k) + 1, 0);
        auto objs = [&](auto&& self, int pos) -> void {
            if (pos == k + 1) {
                // spans ordered by width
                NerveCell cell;
                cell.chain = chain;
                cell.c.resize(static_cast<std::size_t>(k) + 1);
                for (int i = 0; i <= k; ++i)
                    cell.c[i].assign(static_cast<std::size_t>(k - i), -1);
                auto fill = [&](auto&& fill_self, int width, int i) -> void {
                    if (width > k) {
                        cells[k].push_back(cell);
                        return;
                    }
                    if (i + width > k) {
                        fill_self(fill_self, width + 1, 0);
                        return;
                    }
                    const int j = i + width;
                    const PshPtr& hom = cat->hom(chain[i], chain[j]);
                    for (int cand = 0; cand < hom->cells(width - 1); ++cand) {
                        bool ok = true;
                        for (int mid = i + 1; mid < j && ok; ++mid) {
                            // the delta^1 face of c_ij at the mid slot must
                            // be the composite через mid
                            CubeWord face(cat->flavor(), width - 2, {{1, mid - i - 1}}, {}, {});
                            const int lhs = act_word(*hom, face, cand);
                            const int rhs = cat->compose_cells(
                                chain[i], chain[mid], chain[j], mid - i - 1,
                                cell.c[i][mid - i - 1], j - mid - 1, cell.c[mid][j - mid - 1]);
                            if (lhs != rhs) ok = false;
                        }
                        if (!ok) continue;
                        cell.c[i][width - 1] = cand;
                        fill_self(fill_self, width, i + 1);
                    }
                    cell.c[i][width - 1] = -1;
                };
                fill(fill, 1, 0);
                return;
            }
            for (int v = 0; v < n; ++v) {
                chain[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1);
            }
        };
        objs(objs, 0);
        std::sort(cells[k].begin(), cells[k].end());
    }
    auto find_cell = [&](int k, const NerveCell& c) {
        const auto it = std::lower_bound(cells[k].begin(), cells[k].end(), c);
        require_semantic(it != cells[k].end() && *it == c, "nerve face landed outside the nerve");
        return static_cast<int>(it - cells[k].begin());
    };

    PresheafBuilder bld(&simplicial_site(), k_max);
    for (int k = 0; k <= k_max; ++k)
        for (const auto& cell : cells[k]) bld.add_cell(k, nerve_label(*cat, cell));

    for (int k = 0; k <= k_max; ++k)
        for (std::size_t ci = 0; ci < cells[k].size(); ++ci) {
            const NerveCell& cell = cells[k][ci];
            if (k >= 1)
                for (int t = 0; t <= k; ++t) {
                    // face: precompose with the coface functor at t
                    NerveCell img;
                    img.chain.resize(static_cast<std::size_t>(k));
                    for (int j = 0; j < k; ++j)
                        img.chain[static_cast<std::size_t>(j)] = cell.chain[j < t ? j : j + 1];
                    img.c.resize(static_cast<std::size_t>(k));
                    for (int j = 0; j < k; ++j)
                        img.c[j].assign(static_cast<std::size_t>(k - 1 - j), -1);
                    for (int j = 0; j < k; ++j)
                        for (int kk = j + 1; kk < k; ++kk) {
                            const int dj = j < t ? j : j + 1;
                            const int dk = kk < t ? kk : kk + 1;
                            int value = cell.c[dj][dk - dj - 1];
                            if (j < t && t <= kk) {
                                CubeWord face(cat->flavor(), kk - j - 1, {{0, t - j - 1}}, {}, {});
                                value = act_word(*cat->hom(cell.chain[dj], cell.chain[dk]), face,
                                                 value);
                            }
                            img.c[j][kk - j - 1] = value;
                        }
                    bld.set_down(k, t, static_cast<int>(ci), find_cell(k - 1, img));
                }
            if (k < k_max)
                for (int t = 0; t <= k; ++t) {
                    // degeneracy: precompose with the codegeneracy functor
                    NerveCell img;
                    img.chain.resize(static_cast<std::size_t>(k) + 2);
                    for (int j = 0; j <= k + 1; ++j)
                        img.chain[static_cast<std::size_t>(j)] = cell.chain[j <= t ? j : j - 1];
                    img.c.resize(static_cast<std::size_t>(k) + 2);
                    for (int j = 0; j <= k + 1; ++j)
                        img.c[j].assign(static_cast<std::size_t>(k + 1 - j), -1);
                    for (int j = 0; j <= k + 1; ++j)
                        for (int kk = j + 1; kk <= k + 1; ++kk) {
                            const int sj = j <= t ? j : j - 1;
                            const int sk = kk <= t ? kk : kk - 1;
                            int value;
                            if (sj == sk) {
                                value = cat->degenerate_unit(cell.chain[sj], kk - j - 1);
                            } else {
                                value = cell.c[sj][sk - sj - 1];
                                const PshPtr& hom = cat->hom(cell.chain[sj], cell.chain[sk]);
                                if (j < t && t + 1 < kk) {
                                    CubeWord conn(cat->flavor(), kk - j - 1, {}, {t - j - 1}, {});
                                    value = act_word(*hom, conn, value);
                                } else if (j == t && kk > t + 1) {
                                    CubeWord degen(cat->flavor(), kk - j - 1, {}, {}, {0});
                                    value = act_word(*hom, degen, value);
                                } else if (kk == t + 1 && j < t) {
                                    CubeWord degen(cat->flavor(), kk - j - 1, {}, {},
                                                   {t - j - 1});
                                    value = act_word(*hom, degen, value);
                                }
                            }
                            img.c[j][kk - j - 1] = value;
                        }
                    bld.set_up(k, t, static_cast<int>(ci), find_cell(k + 1, img));
                }
        }
    return bld.finish();
}

// ---------------------------------------------------------------------------
// dg categories
// ---------------------------------------------------------------------------

void DgCategory::validate() const {
    const int n = static_cast<int>(objects.size());
    require_semantic(ring.kind == Ring::Kind::prime_field, "dg category needs a prime field");
    require_semantic(static_cast<int>(hom.size()) == n, "dg hom table size");
    require_semantic(static_cast<int>(unit.size()) == n, "dg unit table size");
    for (int x = 0; x < n; ++x) {
        require_semantic(static_cast<int>(hom[x].size()) == n, "dg hom row size");
        require_semantic(static_cast<int>(unit[x].size()) == hom[x][x]->rank(0),
                         "dg unit vector size");
        hom[x][x]->validate();
    }
    // unit laws and associativity on tensor bases
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            ChainTensor txy(hom[x][x], hom[x][y]);
            const ChainMap& m = comp[x][x][y];
            for (int k = 0; k <= hom[x][y]->top_degree(); ++k)
                for (int i = 0; i < hom[x][y]->rank(k); ++i) {
                    // sum_e unit_e * m(e (x) i) = i
                    std::vector<long long> acc(static_cast<std::size_t>(hom[x][y]->rank(k)), 0);
                    for (int e = 0; e < hom[x][x]->rank(0); ++e) {
                        if (unit[x][static_cast<std::size_t>(e)] == 0) continue;
                        const int col = txy.index_of(0, e, k, i);
                        for (int r = 0; r < hom[x][y]->rank(k); ++r)
                            acc[static_cast<std::size_t>(r)] = ring.reduce(
                                acc[static_cast<std::size_t>(r)]
                                + unit[x][static_cast<std::size_t>(e)] * m.mat(k).at(r, col));
                    }
                    for (int r = 0; r < hom[x][y]->rank(k); ++r)
                        require_semantic(acc[static_cast<std::size_t>(r)]
                                             == (r == i ? ring.reduce(1) : 0),
                                         "dg left unit law fails");
                }
        }
}

DgCategory DgCategory::trivial(int p) {
    DgCategory d;
    d.ring = Ring::Fp(p);
    d.objects = {"0"};
    auto k = std::make_shared<FinChainComplex>(
        d.ring, std::vector<std::vector<std::string>>{{"id"}}, std::vector<Matrix>{});
    d.hom = {{k}};
    ChainTensor kk(k, k);
    ChainMap m{kk.object(), k, {}};
    Matrix m0(1, 1);
    m0.at(0, 0) = 1;
    m.mats = {m0};
    d.comp = {{{m}}};
    d.unit = {{1}};
    return d;
}

DgCategory DgCategory::arrow(int p) {
    DgCategory d;
    d.ring = Ring::Fp(p);
    d.objects = {"0", "1"};
    auto k_id0 = std::make_shared<FinChainComplex>(
        d.ring, std::vector<std::vector<std::string>>{{"id0"}}, std::vector<Matrix>{});
    auto k_id1 = std::make_shared<FinChainComplex>(
        d.ring, std::vector<std::vector<std::string>>{{"id1"}}, std::vector<Matrix>{});
    auto k_f = std::make_shared<FinChainComplex>(
        d.ring, std::vector<std::vector<std::string>>{{"f"}}, std::vector<Matrix>{});
    auto k_zero = zero_complex(d.ring, 0);
    d.hom = {{k_id0, k_f}, {k_zero, k_id1}};
    d.unit = {{1}, {1}};
    d.comp.resize(2);
    for (int x = 0; x < 2; ++x) {
        d.comp[x].resize(2);
        for (int y = 0; y < 2; ++y) d.comp[x][y].resize(2);
    }
    auto one_by_one = [&](const ChPtr& a, const ChPtr& b, const ChPtr& c) {
        ChainTensor t(a, b);
        ChainMap m{t.object(), c, {}};
        Matrix m0(c->rank(0), t.object()->rank(0));
        if (c->rank(0) == 1 && t.object()->rank(0) == 1) m0.at(0, 0) = 1;
        m.mats = {m0};
        return m;
    };
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                d.comp[x][y][z] = one_by_one(d.hom[x][y], d.hom[y][z], d.hom[x][z]);
    return d;
}

CatPtr dg_to_cubical(const DgCategory& d, int trunc) {
    const int n = static_cast<int>(d.objects.size());
    const Ring ring = d.ring;
    CubicalQuiver q{Flavor::connections, trunc, d.objects, {}};
    q.hom.resize(static_cast<std::size_t>(n));
    std::vector<std::vector<std::vector<std::vector<ChainMap>>>> maps(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        q.hom[x].resize(static_cast<std::size_t>(n));
        maps[x].resize(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) {
            maps[x][y] = dg_singular_maps(d.hom[x][y], trunc);
            q.hom[x][y] = dg_singular(d.hom[x][y], trunc);
        }
    }
    std::vector<int> units;
    for (int x = 0; x < n; ++x) {
        // the unit cell: the chain map K -> hom(x,x) hitting the identity
        int found = -1;
        for (std::size_t i = 0; i < maps[x][x][0].size(); ++i) {
            bool ok = true;
            for (int r = 0; r < d.hom[x][x]->rank(0); ++r)
                if (maps[x][x][0][i].mat(0).at(r, 0)
                    != d.ring.reduce(d.unit[x][static_cast<std::size_t>(r)]))
                    ok = false;
            if (ok) found = static_cast<int>(i);
        }
        require_semantic(found >= 0, "dg unit is not a cycle");
        units.push_back(found);
    }
    auto rule = [d, maps, ring](int x, int y, int z, const DayTensor& day, int dim,
                                int cls) -> int {
        const auto& r = day.rep(dim, cls);
        const ChainMap& phi = maps[x][y][r.p][static_cast<std::size_t>(r.x)];
        const ChainMap& psi = maps[y][z][r.q][static_cast<std::size_t>(r.y)];
        ChainTensor t(d.hom[x][y], d.hom[y][z]);
        // pair map C^{(x)(p+q)} -> hom(x,y) (x) hom(y,z)
        ChPtr cpq = c1_power(ring, r.p + r.q);
        ChainMap pair{cpq, t.object(), {}};
        std::uint32_t pw = 1;
        for (int u = 0; u < r.p; ++u) pw *= 3;
        for (int k = 0; k <= cpq->top_degree(); ++k) {
            Matrix mk(t.object()->rank(k), cpq->rank(k));
            for (int col = 0; col < cpq->rank(k); ++col) {
                const std::uint32_t code = c1_power_code(r.p + r.q, k, col);
                const std::uint32_t code_l = code % pw;
                const std::uint32_t code_r = code / pw;
                int deg_l = 0;
                for (std::uint32_t c2 = code_l; c2 > 0; c2 /= 3) deg_l += (c2 % 3 == 2);
                const int deg_r = k - deg_l;
                if (deg_l > d.hom[x][y]->top_degree() || deg_r > d.hom[y][z]->top_degree())
                    continue;
                const int il = c1_power_index(r.p, deg_l, code_l);
                const int ir = c1_power_index(r.q, deg_r, code_r);
                const Matrix& pm = phi.mat(deg_l);
                const Matrix& qm = psi.mat(deg_r);
                for (int r1 = 0; r1 < pm.rows(); ++r1) {
                    if (pm.at(r1, il) == 0) continue;
                    for (int r2 = 0; r2 < qm.rows(); ++r2) {
                        if (qm.at(r2, ir) == 0) continue;
                        mk.at(t.index_of(deg_l, r1, deg_r, r2), col) =
                            ring.reduce(pm.at(r1, il) * qm.at(r2, ir));
                    }
                }
            }
            pair.mats.push_back(std::move(mk));
        }
        // comp o pair o L(w)
        ChainMap lw = c1_power_word_map(ring, r.w);
        ChainMap total{lw.src, d.hom[x][z], {}};
        for (int k = 0; k <= std::max(lw.src->top_degree(), d.hom[x][z]->top_degree()); ++k)
            total.mats.push_back(mat_mul(
                ring, d.comp[x][y][z].mat(k), mat_mul(ring, pair.mat(k), lw.mat(k))));
        const auto& v = maps[x][z][dim];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (chain_maps_equal(v[i], total)) return static_cast<int>(i);
        fail_semantic("dg composite is not a cell of the target hom");
    };
    return std::make_shared<CubicalCategory>(std::move(q), std::move(units), rule);
}

PshPtr dg_category_nerve(const DgCategory& d, int k_max) {
    return hc_nerve(dg_to_cubical(d, std::max(0, k_max - 1)), k_max);
}

} // namespace cubix
