#include "cubix/presheaf.hpp"

#include <algorithm>
#include <map>

#include "cubix/error.hpp"
#include "cubix/limits.hpp"

namespace cubix {

// ---------------------------------------------------------------------------
// Presheaf
// ---------------------------------------------------------------------------

Presheaf::Presheaf(const Site* site, int trunc, int skeleton,
                   std::vector<std::vector<std::string>> labels,
                   std::vector<std::vector<std::vector<int>>> down,
                   std::vector<std::vector<std::vector<int>>> up)
    : site_(site), trunc_(trunc), skeleton_(skeleton),
      labels_(std::move(labels)), down_(std::move(down)), up_(std::move(up)) {}

int Presheaf::label_index(int dim, const std::string& label) const {
    const auto& v = labels_[dim];
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == label) return static_cast<int>(i);
    return -1;
}

int Presheaf::act_path(int start_dim, std::span<const ActionRef> path, int cell) const {
    int d = start_dim;
    for (const ActionRef& a : path) {
        cell = act(d, a, cell);
        d += a.up ? 1 : -1;
    }
    return cell;
}

bool Presheaf::degenerate(int dim, int cell) const {
    if (dim <= 0) return false;
    for (int k = 0; k < site_->up_count(dim - 1); ++k)
        for (int x = 0; x < cells(dim - 1); ++x)
            if (up(dim - 1, k, x) == cell) return true;
    return false;
}

int Presheaf::nondegenerate_count(int dim) const {
    int n = 0;
    for (int c = 0; c < cells(dim); ++c)
        if (!degenerate(dim, c)) ++n;
    return n;
}

void Presheaf::validate() const {
    require_semantic(trunc_ >= 0, "negative truncation");
    require_semantic(skeleton_ >= 0 && skeleton_ <= trunc_, "skeleton out of range");
    require_semantic(static_cast<int>(labels_.size()) == trunc_ + 1, "label table size");
    require_semantic(static_cast<int>(down_.size()) == trunc_ + 1, "down table size");
    require_semantic(static_cast<int>(up_.size()) == trunc_ + 1, "up table size");
    for (int d = 0; d <= trunc_; ++d) {
        const int dc = d >= 1 ? site_->down_count(d) : 0;
        const int uc = d < trunc_ ? site_->up_count(d) : 0;
        require_semantic(static_cast<int>(down_[d].size()) == dc, "down arity at dim");
        require_semantic(static_cast<int>(up_[d].size()) == uc, "up arity at dim");
        for (int k = 0; k < dc; ++k) {
            require_semantic(static_cast<int>(down_[d][k].size()) == cells(d), "down row size");
            for (int v : down_[d][k])
                require_semantic(v >= 0 && v < cells(d - 1), "down image out of range");
        }
        for (int k = 0; k < uc; ++k) {
            require_semantic(static_cast<int>(up_[d][k].size()) == cells(d), "up row size");
            for (int v : up_[d][k])
                require_semantic(v >= 0 && v < cells(d + 1), "up image out of range");
        }
        // labels unique within a dimension
        auto sorted = labels_[d];
        std::sort(sorted.begin(), sorted.end());
        require_semantic(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                         "duplicate cell label");
    }
    // defining relations
    for (const RelationInstance& r : site_->relations(trunc_)) {
        if (r.start_dim > trunc_) continue;
        for (int c = 0; c < cells(r.start_dim); ++c) {
            const int l = act_path(r.start_dim, r.lhs, c);
            const int rr = act_path(r.start_dim, r.rhs, c);
            require_semantic(l == rr, "presheaf relation identity fails on " + site_->name());
        }
    }
    // skeleton claim
    for (int d = skeleton_ + 1; d <= trunc_; ++d)
        for (int c = 0; c < cells(d); ++c)
            require_semantic(degenerate(d, c), "cell above skeleton is nondegenerate");
}

int computed_skeleton(const Presheaf& x) {
    int m = 0;
    for (int d = 0; d <= x.trunc(); ++d)
        if (x.nondegenerate_count(d) > 0) m = d;
    return m;
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

PresheafBuilder::PresheafBuilder(const Site* site, int trunc) : site_(site), trunc_(trunc) {
    require_semantic(trunc >= 0, "negative truncation");
    labels_.resize(trunc_ + 1);
    down_.resize(trunc_ + 1);
    up_.resize(trunc_ + 1);
    for (int d = 0; d <= trunc_; ++d) {
        down_[d].resize(d >= 1 ? site_->down_count(d) : 0);
        up_[d].resize(d < trunc_ ? site_->up_count(d) : 0);
    }
}

int PresheafBuilder::add_cell(int dim, std::string label) {
    require_semantic(dim >= 0 && dim <= trunc_, "cell dimension out of range");
    labels_[dim].push_back(std::move(label));
    for (auto& row : down_[dim]) row.push_back(-1);
    for (auto& row : up_[dim]) row.push_back(-1);
    return static_cast<int>(labels_[dim].size()) - 1;
}

void PresheafBuilder::set_down(int dim, int k, int cell, int image) {
    down_[dim][k][cell] = image;
}

void PresheafBuilder::set_up(int dim, int k, int cell, int image) {
    up_[dim][k][cell] = image;
}

PshPtr PresheafBuilder::finish(bool validate) {
    for (int d = 0; d <= trunc_; ++d) {
        for (const auto& row : down_[d])
            for (int v : row) require_semantic(v >= 0, "unset down action");
        for (const auto& row : up_[d])
            for (int v : row) require_semantic(v >= 0, "unset up action");
    }
    auto p = std::make_shared<Presheaf>(site_, trunc_, 0, labels_, down_, up_);
    const int skel = computed_skeleton(*p);
    p = std::make_shared<Presheaf>(site_, trunc_, skel, std::move(labels_), std::move(down_),
                                   std::move(up_));
    if (validate) p->validate();
    return p;
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

void PresheafMap::validate() const {
    require_semantic(src && tgt, "map endpoints missing");
    require_semantic(&src->site() == &tgt->site(), "map endpoints on different sites");
    require_semantic(src->trunc() == tgt->trunc(), "map endpoints of different truncation");
    require_semantic(static_cast<int>(cells.size()) == src->trunc() + 1, "map table size");
    const int top = src->trunc();
    for (int d = 0; d <= top; ++d) {
        require_semantic(static_cast<int>(cells[d].size()) == src->cells(d), "map row size");
        for (int v : cells[d])
            require_semantic(v >= 0 && v < tgt->cells(d), "map image out of range");
        if (d >= 1)
            for (int k = 0; k < src->site().down_count(d); ++k)
                for (int c = 0; c < src->cells(d); ++c)
                    require_semantic(
                        cells[d - 1][src->down(d, k, c)] == tgt->down(d, k, cells[d][c]),
                        "map does not commute with a down action");
        if (d < top)
            for (int k = 0; k < src->site().up_count(d); ++k)
                for (int c = 0; c < src->cells(d); ++c)
                    require_semantic(cells[d + 1][src->up(d, k, c)] == tgt->up(d, k, cells[d][c]),
                                     "map does not commute with an up action");
    }
}

PresheafMap identity_map(const PshPtr& x) {
    PresheafMap m{x, x, {}};
    m.cells.resize(x->trunc() + 1);
    for (int d = 0; d <= x->trunc(); ++d) {
        m.cells[d].resize(x->cells(d));
        for (int c = 0; c < x->cells(d); ++c) m.cells[d][c] = c;
    }
    return m;
}

PresheafMap compose(const PresheafMap& g, const PresheafMap& f) {
    require_semantic(f.tgt.get() == g.src.get(), "maps not composable");
    PresheafMap m{f.src, g.tgt, {}};
    m.cells.resize(f.cells.size());
    for (std::size_t d = 0; d < f.cells.size(); ++d) {
        m.cells[d].resize(f.cells[d].size());
        for (std::size_t c = 0; c < f.cells[d].size(); ++c)
            m.cells[d][c] = g.cells[d][f.cells[d][c]];
    }
    return m;
}

bool is_mono(const PresheafMap& f) {
    for (int d = 0; d <= f.src->trunc(); ++d) {
        std::vector<char> seen(static_cast<std::size_t>(f.tgt->cells(d)), 0);
        for (int v : f.cells[d]) {
            if (seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Map enumeration
// ---------------------------------------------------------------------------

namespace {

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

// Iterated 1-WL style refinement; invariant under isomorphism.
std::vector<std::vector<std::uint64_t>> wl_labels(const Presheaf& x) {
    const int top = x.trunc();
    std::vector<std::vector<std::uint64_t>> lab(top + 1);
    for (int d = 0; d <= top; ++d)
        lab[d].assign(static_cast<std::size_t>(x.cells(d)), static_cast<std::uint64_t>(d) + 1);
    for (int round = 0; round < top + 3; ++round) {
        std::vector<std::vector<std::uint64_t>> next(top + 1);
        for (int d = 0; d <= top; ++d) {
            next[d].resize(static_cast<std::size_t>(x.cells(d)));
            for (int c = 0; c < x.cells(d); ++c) {
                std::uint64_t h = hash_mix(0xabcd, lab[d][c]);
                if (d >= 1)
                    for (int k = 0; k < x.site().down_count(d); ++k)
                        h = hash_mix(h, lab[d - 1][x.down(d, k, c)] * 31 + std::uint64_t(k));
                if (d < top)
                    for (int k = 0; k < x.site().up_count(d); ++k)
                        h = hash_mix(h, lab[d + 1][x.up(d, k, c)] * 37 + std::uint64_t(k));
                next[d][c] = h;
            }
        }
        // co-action multisets
        for (int d = 0; d <= top; ++d) {
            std::vector<std::vector<std::uint64_t>> mult(static_cast<std::size_t>(x.cells(d)));
            if (d + 1 <= top)
                for (int k = 0; k < x.site().down_count(d + 1); ++k)
                    for (int c = 0; c < x.cells(d + 1); ++c)
                        mult[static_cast<std::size_t>(x.down(d + 1, k, c))].push_back(
                            lab[d + 1][c] * 41 + std::uint64_t(k));
            if (d >= 1)
                for (int k = 0; k < x.site().up_count(d - 1); ++k)
                    for (int c = 0; c < x.cells(d - 1); ++c)
                        mult[static_cast<std::size_t>(x.up(d - 1, k, c))].push_back(
                            lab[d - 1][c] * 43 + std::uint64_t(k));
            for (int c = 0; c < x.cells(d); ++c) {
                auto& v = mult[static_cast<std::size_t>(c)];
                std::sort(v.begin(), v.end());
                std::uint64_t h = next[d][c];
                for (std::uint64_t m : v) h = hash_mix(h, m);
                next[d][c] = h;
            }
        }
        lab = std::move(next);
    }
    return lab;
}

struct Searcher {
    const Presheaf& a;
    const Presheaf& b;
    const MapSearchOptions& opt;
    int top;
    std::vector<std::vector<int>> phi;  // assignment, -1 free
    std::vector<std::vector<int>> used; // bijective: target cell -> -1 or source cell
    std::vector<std::pair<int, int>> trail;
    std::vector<std::pair<int, int>> branch_cells; // (dim, cell), branch order
    std::vector<std::vector<std::uint64_t>> la, lb;
    std::vector<PresheafMap> results;
    std::uint64_t nodes = 0;

    Searcher(const Presheaf& a_, const Presheaf& b_, const MapSearchOptions& o)
        : a(a_), b(b_), opt(o), top(a_.trunc()) {
        phi.resize(top + 1);
        used.resize(top + 1);
        for (int d = 0; d <= top; ++d) {
            phi[d].assign(static_cast<std::size_t>(a.cells(d)), -1);
            used[d].assign(static_cast<std::size_t>(b.cells(d)), -1);
        }
        // Branch highest dimension first: a top cell forces its closure.
        for (int d = top; d >= 0; --d)
            for (int c = 0; c < a.cells(d); ++c) branch_cells.emplace_back(d, c);
        if (opt.bijective) {
            la = wl_labels(a);
            lb = wl_labels(b);
        }
    }

    // Assigns phi[dim][cell] = val and propagates through all actions.
    // Returns false on conflict; records everything on the trail.
    bool assign(int dim, int cell, int val) {
        std::vector<std::pair<int, int>> queue;
        auto put = [&](int d, int x, int y) -> bool {
            int& slot = phi[d][x];
            if (slot != -1) return slot == y;
            if (opt.bijective) {
                int& u = used[d][y];
                if (u != -1 && u != x) return false;
                u = x;
            }
            slot = y;
            trail.emplace_back(d, x);
            queue.emplace_back(d, x);
            return true;
        };
        if (!put(dim, cell, val)) return false;
        while (!queue.empty()) {
            auto [d, x] = queue.back();
            queue.pop_back();
            const int y = phi[d][x];
            if (d >= 1)
                for (int k = 0; k < a.site().down_count(d); ++k)
                    if (!put(d - 1, a.down(d, k, x), b.down(d, k, y))) return false;
            if (d < top)
                for (int k = 0; k < a.site().up_count(d); ++k)
                    if (!put(d + 1, a.up(d, k, x), b.up(d, k, y))) return false;
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail.size() > mark) {
            auto [d, x] = trail.back();
            trail.pop_back();
            if (opt.bijective) used[d][phi[d][x]] = -1;
            phi[d][x] = -1;
        }
    }

    bool candidate_ok(int dim, int cell, int y) const {
        if (opt.bijective) {
            if (used[dim][y] != -1) return false;
            if (la[dim][cell] != lb[dim][y]) return false;
        }
        if (dim >= 1)
            for (int k = 0; k < a.site().down_count(dim); ++k) {
                const int fx = phi[dim - 1][a.down(dim, k, cell)];
                if (fx != -1 && b.down(dim, k, y) != fx) return false;
            }
        if (dim < top)
            for (int k = 0; k < a.site().up_count(dim); ++k) {
                const int ux = phi[dim + 1][a.up(dim, k, cell)];
                if (ux != -1 && b.up(dim, k, y) != ux) return false;
            }
        return true;
    }

    void search(std::size_t next_branch) {
        if (results.size() >= opt.max_results) return;
        if (++nodes > limits().max_candidates)
            fail_guard("map enumeration exceeds candidate guard");
        while (next_branch < branch_cells.size()) {
            auto [d, c] = branch_cells[next_branch];
            if (phi[d][c] == -1) break;
            ++next_branch;
        }
        if (next_branch == branch_cells.size()) {
            PresheafMap m;
            m.cells = phi;
            results.push_back(std::move(m));
            return;
        }
        auto [d, c] = branch_cells[next_branch];
        for (int y = 0; y < b.cells(d); ++y) {
            if (!candidate_ok(d, c, y)) continue;
            const std::size_t mark = trail.size();
            if (assign(d, c, y)) search(next_branch + 1);
            undo(mark);
            if (results.size() >= opt.max_results) return;
        }
    }
};

} // namespace

std::vector<PresheafMap> enumerate_maps(const PshPtr& a, const PshPtr& b,
                                        const MapSearchOptions& opt) {
    require_semantic(&a->site() == &b->site(), "map search across different sites");
    require_semantic(a->trunc() == b->trunc(), "map search across different truncations");
    if (opt.bijective)
        for (int d = 0; d <= a->trunc(); ++d)
            if (a->cells(d) != b->cells(d)) return {};
    Searcher s(*a, *b, opt);
    std::size_t mark = s.trail.size();
    bool seeded_ok = true;
    if (opt.seed) {
        const auto& seed = *opt.seed;
        for (int d = 0; d <= a->trunc() && seeded_ok; ++d)
            for (int c = 0; c < a->cells(d) && seeded_ok; ++c)
                if (seed[d][c] != -1 && !s.assign(d, c, seed[d][c])) seeded_ok = false;
    }
    if (seeded_ok) s.search(0);
    s.undo(mark);
    for (auto& m : s.results) {
        m.src = a;
        m.tgt = b;
    }
    std::sort(s.results.begin(), s.results.end(),
              [](const PresheafMap& x, const PresheafMap& y) { return x.cells < y.cells; });
    return s.results;
}

std::vector<PresheafMap> hom_maps(const PshPtr& a, const PshPtr& b) {
    return enumerate_maps(a, b, {});
}

std::optional<PresheafMap> find_isomorphism(const PshPtr& a, const PshPtr& b) {
    MapSearchOptions opt;
    opt.bijective = true;
    opt.max_results = 1;
    auto res = enumerate_maps(a, b, opt);
    if (res.empty()) return std::nullopt;
    return res.front();
}

std::vector<PresheafMap> extensions(const PresheafMap& incl, const PresheafMap& u,
                                    std::uint64_t max_results) {
    require_semantic(incl.src.get() == u.src.get(), "extension problem endpoints disagree");
    require_semantic(is_mono(incl), "extension along a non-mono");
    const PshPtr& big = incl.tgt;
    std::vector<std::vector<int>> seed(static_cast<std::size_t>(big->trunc()) + 1);
    for (int d = 0; d <= big->trunc(); ++d) seed[d].assign(static_cast<std::size_t>(big->cells(d)), -1);
    for (int d = 0; d <= incl.src->trunc(); ++d)
        for (int c = 0; c < incl.src->cells(d); ++c) seed[d][incl.cells[d][c]] = u.cells[d][c];
    MapSearchOptions opt;
    opt.seed = &seed;
    opt.max_results = max_results;
    return enumerate_maps(big, u.tgt, opt);
}

// ---------------------------------------------------------------------------
// Colimits and subobjects
// ---------------------------------------------------------------------------

CoproductResult coproduct(const std::vector<PshPtr>& parts) {
    require_semantic(!parts.empty(), "coproduct of nothing (use an explicit empty object)");
    const Site* site = &parts[0]->site();
    const int top = parts[0]->trunc();
    for (const auto& p : parts) {
        require_semantic(&p->site() == site, "coproduct across sites");
        require_semantic(p->trunc() == top, "coproduct across truncations");
    }
    PresheafBuilder bld(site, top);
    std::vector<std::vector<std::vector<int>>> index(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        index[i].resize(static_cast<std::size_t>(top) + 1);
        for (int d = 0; d <= top; ++d)
            for (int c = 0; c < parts[i]->cells(d); ++c)
                index[i][d].push_back(
                    bld.add_cell(d, std::to_string(i) + ":" + parts[i]->label(d, c)));
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (int d = 0; d <= top; ++d)
            for (int c = 0; c < parts[i]->cells(d); ++c) {
                if (d >= 1)
                    for (int k = 0; k < site->down_count(d); ++k)
                        bld.set_down(d, k, index[i][d][c], index[i][d - 1][parts[i]->down(d, k, c)]);
                if (d < top)
                    for (int k = 0; k < site->up_count(d); ++k)
                        bld.set_up(d, k, index[i][d][c], index[i][d + 1][parts[i]->up(d, k, c)]);
            }
    CoproductResult out;
    out.object = bld.finish();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        PresheafMap inj{parts[i], out.object, {}};
        inj.cells.resize(static_cast<std::size_t>(top) + 1);
        for (int d = 0; d <= top; ++d) inj.cells[d] = index[i][d];
        inj.validate();
        out.injections.push_back(std::move(inj));
    }
    return out;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent_[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
    }

private:
    std::vector<int> parent_;
};

} // namespace

PushoutResult pushout(const PresheafMap& f, const PresheafMap& g) {
    require_semantic(f.src.get() == g.src.get(), "pushout legs must share their source");
    const PshPtr& a = f.src;
    const PshPtr& x = f.tgt;
    const PshPtr& y = g.tgt;
    require_semantic(&x->site() == &y->site() && x->trunc() == y->trunc(),
                     "pushout endpoints incompatible");
    const Site* site = &x->site();
    const int top = x->trunc();

    std::vector<UnionFind> uf;
    uf.reserve(static_cast<std::size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) {
        uf.emplace_back(x->cells(d) + y->cells(d));
        for (int c = 0; c < a->cells(d); ++c)
            uf[static_cast<std::size_t>(d)].unite(f.cells[d][c], x->cells(d) + g.cells[d][c]);
    }
    // classes in order of smallest member
    std::vector<std::vector<int>> class_of(static_cast<std::size_t>(top) + 1);
    std::vector<std::vector<int>> reps(static_cast<std::size_t>(top) + 1);
    PresheafBuilder bld(site, top);
    for (int d = 0; d <= top; ++d) {
        const int total = x->cells(d) + y->cells(d);
        class_of[d].assign(static_cast<std::size_t>(total), -1);
        for (int c = 0; c < total; ++c) {
            const int r = uf[static_cast<std::size_t>(d)].find(c);
            if (class_of[d][static_cast<std::size_t>(r)] == -1) {
                const std::string lbl =
                    r < x->cells(d) ? "l:" + x->label(d, r) : "r:" + y->label(d, r - x->cells(d));
                class_of[d][static_cast<std::size_t>(r)] = bld.add_cell(d, lbl);
                reps[d].push_back(r);
            }
            class_of[d][static_cast<std::size_t>(c)] = class_of[d][static_cast<std::size_t>(r)];
        }
    }
    auto act_side = [&](int d, bool upward, int k, int mixed) {
        if (mixed < x->cells(d)) return upward ? x->up(d, k, mixed) : x->down(d, k, mixed);
        const int c = mixed - x->cells(d);
        const int img = upward ? y->up(d, k, c) : y->down(d, k, c);
        return img + (upward ? x->cells(d + 1) : x->cells(d - 1));
    };
    for (int d = 0; d <= top; ++d)
        for (std::size_t ci = 0; ci < reps[d].size(); ++ci) {
            const int rep = reps[d][ci];
            if (d >= 1)
                for (int k = 0; k < site->down_count(d); ++k)
                    bld.set_down(d, k, static_cast<int>(ci),
                                 class_of[d - 1][static_cast<std::size_t>(act_side(d, false, k, rep))]);
            if (d < top)
                for (int k = 0; k < site->up_count(d); ++k)
                    bld.set_up(d, k, static_cast<int>(ci),
                               class_of[d + 1][static_cast<std::size_t>(act_side(d, true, k, rep))]);
        }
    PushoutResult out;
    out.object = bld.finish();
    out.from_left = PresheafMap{x, out.object, {}};
    out.from_right = PresheafMap{y, out.object, {}};
    out.from_left.cells.resize(static_cast<std::size_t>(top) + 1);
    out.from_right.cells.resize(static_cast<std::size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) {
        for (int c = 0; c < x->cells(d); ++c)
            out.from_left.cells[d].push_back(class_of[d][static_cast<std::size_t>(c)]);
        for (int c = 0; c < y->cells(d); ++c)
            out.from_right.cells[d].push_back(class_of[d][static_cast<std::size_t>(x->cells(d) + c)]);
    }
    out.from_left.validate();
    out.from_right.validate();
    return out;
}

PresheafMap pushout_induced(const PushoutResult& po, const PresheafMap& via_left,
                            const PresheafMap& via_right) {
    require_semantic(via_left.src.get() == po.from_left.src.get()
                         && via_right.src.get() == po.from_right.src.get(),
                     "pushout cocone legs have wrong sources");
    require_semantic(via_left.tgt.get() == via_right.tgt.get(),
                     "pushout cocone legs have different targets");
    const PshPtr& p = po.object;
    PresheafMap out{p, via_left.tgt, {}};
    out.cells.resize(static_cast<std::size_t>(p->trunc()) + 1);
    for (int d = 0; d <= p->trunc(); ++d) out.cells[d].assign(static_cast<std::size_t>(p->cells(d)), -1);
    auto feed = [&](const PresheafMap& into, const PresheafMap& via) {
        for (int d = 0; d <= p->trunc(); ++d)
            for (std::size_t c = 0; c < into.cells[d].size(); ++c) {
                int& slot = out.cells[d][static_cast<std::size_t>(into.cells[d][c])];
                require_semantic(slot == -1 || slot == via.cells[d][c],
                                 "cocone legs disagree on a pushout class");
                slot = via.cells[d][c];
            }
    };
    feed(po.from_left, via_left);
    feed(po.from_right, via_right);
    out.validate();
    return out;
}

std::pair<PshPtr, PresheafMap> subpresheaf(const PshPtr& x,
                                           const std::vector<std::vector<char>>& keep) {
    const Site* site = &x->site();
    const int top = x->trunc();
    PresheafBuilder bld(site, top);
    std::vector<std::vector<int>> index(static_cast<std::size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) {
        index[d].assign(static_cast<std::size_t>(x->cells(d)), -1);
        for (int c = 0; c < x->cells(d); ++c)
            if (keep[d][static_cast<std::size_t>(c)])
                index[d][static_cast<std::size_t>(c)] = bld.add_cell(d, x->label(d, c));
    }
    for (int d = 0; d <= top; ++d)
        for (int c = 0; c < x->cells(d); ++c) {
            if (!keep[d][static_cast<std::size_t>(c)]) continue;
            if (d >= 1)
                for (int k = 0; k < site->down_count(d); ++k) {
                    const int img = index[d - 1][static_cast<std::size_t>(x->down(d, k, c))];
                    require_semantic(img >= 0, "cell set not closed under a down action");
                    bld.set_down(d, k, index[d][static_cast<std::size_t>(c)], img);
                }
            if (d < top)
                for (int k = 0; k < site->up_count(d); ++k) {
                    const int img = index[d + 1][static_cast<std::size_t>(x->up(d, k, c))];
                    require_semantic(img >= 0, "cell set not closed under an up action");
                    bld.set_up(d, k, index[d][static_cast<std::size_t>(c)], img);
                }
        }
    auto sub = bld.finish();
    PresheafMap incl{sub, x, {}};
    incl.cells.resize(static_cast<std::size_t>(top) + 1);
    for (int d = 0; d <= top; ++d)
        for (int c = 0; c < x->cells(d); ++c)
            if (index[d][static_cast<std::size_t>(c)] >= 0) incl.cells[d].push_back(c);
    incl.validate();
    return {sub, incl};
}

} // namespace cubix
