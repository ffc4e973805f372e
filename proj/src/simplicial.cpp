#include "cubix/simplicial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "cubix/error.hpp"
#include "cubix/limits.hpp"

namespace cubix {

// ---------------------------------------------------------------------------
// Site
// ---------------------------------------------------------------------------

namespace {

// A letter of the simplex category: coface delta_i (omits i) or
// codegeneracy sigma_i (repeats i).
struct SGen {
    bool face;
    int index;
};

std::vector<ActionRef> s_action_path(std::span<const SGen> letters) {
    std::vector<ActionRef> path;
    for (const SGen& g : letters) path.push_back({!g.face, g.index});
    return path;
}

class SimplicialSite final : public Site {
public:
    std::string name() const override { return "simplicial"; }
    int down_count(int dim) const override { return dim + 1; }
    int up_count(int dim) const override { return dim + 1; }
    std::string down_name(int, int k) const override { return "d@" + std::to_string(k); }
    std::string up_name(int, int k) const override { return "s@" + std::to_string(k); }
    std::vector<RelationInstance> relations(int trunc) const override;
};

std::vector<RelationInstance> SimplicialSite::relations(int trunc) const {
    std::vector<RelationInstance> out;
    auto add = [&](int tgt, std::vector<SGen> lhs, std::vector<SGen> rhs) {
        auto ok = [&](const std::vector<SGen>& w) {
            int d = tgt;
            if (d < 0 || d > trunc) return false;
            for (const SGen& g : w) {
                d += g.face ? -1 : 1;
                if (d < 0 || d > trunc) return false;
            }
            return true;
        };
        if (!ok(lhs) || !ok(rhs)) return;
        out.push_back({tgt, s_action_path(lhs), s_action_path(rhs)});
    };
    for (int n = 0; n <= trunc; ++n) {
        // delta_j delta_i = delta_i delta_{j-1} : [n] -> [n+2], i < j
        for (int j = 0; j <= n + 2; ++j)
            for (int i = 0; i < j && i <= n + 1; ++i)
                add(n + 2, {{true, j}, {true, i}}, {{true, i}, {true, j - 1}});
        // sigma_j sigma_i = sigma_i sigma_{j+1} : [n+2] -> [n], i <= j
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                add(n, {{false, j}, {false, i}}, {{false, i}, {false, j + 1}});
        // sigma_j delta_i : [n] -> [n]
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                if (i < j)
                    add(n, {{false, j}, {true, i}}, {{true, i}, {false, j - 1}});
                else if (i == j || i == j + 1)
                    add(n, {{false, j}, {true, i}}, {});
                else
                    add(n, {{false, j}, {true, i}}, {{true, i - 1}, {false, j}});
            }
    }
    return out;
}

const SimplicialSite g_simplicial_site;

} // namespace

const Site& simplicial_site() { return g_simplicial_site; }

bool is_simplicial(const Presheaf& x) { return &x.site() == &g_simplicial_site; }

// ---------------------------------------------------------------------------
// Standard simplices
// ---------------------------------------------------------------------------

namespace {

// monotone (k+1)-tuples with entries in 0..n, lexicographic order
std::vector<std::vector<int>> monotone_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int lo) -> void {
        if (static_cast<int>(cur.size()) == k + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= n; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::string tuple_label(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(v[i]);
    }
    return s;
}

PshPtr build_simplex(int n, int trunc) {
    PresheafBuilder bld(&g_simplicial_site, trunc);
    std::vector<std::vector<std::vector<int>>> tuples(static_cast<std::size_t>(trunc) + 1);
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(trunc) + 1);
    for (int k = 0; k <= trunc; ++k) {
        tuples[k] = monotone_tuples(n, k);
        for (std::size_t c = 0; c < tuples[k].size(); ++c) {
            bld.add_cell(k, tuple_label(tuples[k][c]));
            index[k][tuples[k][c]] = static_cast<int>(c);
        }
    }
    for (int k = 0; k <= trunc; ++k)
        for (std::size_t c = 0; c < tuples[k].size(); ++c) {
            const auto& v = tuples[k][c];
            if (k >= 1)
                for (int i = 0; i <= k; ++i) {
                    auto w = v;
                    w.erase(w.begin() + i);
                    bld.set_down(k, i, static_cast<int>(c), index[k - 1].at(w));
                }
            if (k < trunc)
                for (int i = 0; i <= k; ++i) {
                    auto w = v;
                    w.insert(w.begin() + i, v[static_cast<std::size_t>(i)]);
                    bld.set_up(k, i, static_cast<int>(c), index[k + 1].at(w));
                }
        }
    return bld.finish();
}

} // namespace

PshPtr simplex(int n, int trunc) {
    static std::map<std::pair<int, int>, PshPtr> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, trunc});
    if (it != cache.end()) return it->second;
    return cache.emplace(std::make_pair(n, trunc), build_simplex(n, trunc)).first->second;
}

namespace {

SubobjectResult simplex_subobject(int n, int trunc, const std::function<bool(const std::vector<int>&)>& keep_tuple) {
    PshPtr rep = simplex(n, trunc);
    std::vector<std::vector<char>> keep(static_cast<std::size_t>(trunc) + 1);
    for (int k = 0; k <= trunc; ++k) {
        const auto tuples = monotone_tuples(n, k);
        keep[k].resize(tuples.size());
        for (std::size_t c = 0; c < tuples.size(); ++c) keep[k][c] = keep_tuple(tuples[c]) ? 1 : 0;
    }
    auto [sub, incl] = subpresheaf(rep, keep);
    return {sub, incl};
}

} // namespace

SubobjectResult simplicial_boundary(int n, int trunc) {
    return simplex_subobject(n, trunc, [&](const std::vector<int>& v) {
        std::vector<char> hit(static_cast<std::size_t>(n) + 1, 0);
        for (int t : v) hit[static_cast<std::size_t>(t)] = 1;
        for (char h : hit)
            if (!h) return true; // misses a vertex, so factors through a face
        return false;
    });
}

SubobjectResult simplicial_horn(int n, int k, int trunc) {
    require_semantic(n >= 1 && k >= 0 && k <= n, "horn indices out of range");
    return simplex_subobject(n, trunc, [&](const std::vector<int>& v) {
        std::vector<char> hit(static_cast<std::size_t>(n) + 1, 0);
        for (int t : v) hit[static_cast<std::size_t>(t)] = 1;
        for (int m = 0; m <= n; ++m)
            if (m != k && !hit[static_cast<std::size_t>(m)]) return true;
        return false;
    });
}

PshPtr sset_product(const PshPtr& x, const PshPtr& y) {
    require_semantic(is_simplicial(*x) && is_simplicial(*y), "product needs simplicial sets");
    require_semantic(x->trunc() == y->trunc(), "product across truncations");
    const int top = x->trunc();
    PresheafBuilder bld(&g_simplicial_site, top);
    auto pair_id = [&](int dim, int a, int b) { return a * y->cells(dim) + b; };
    for (int d = 0; d <= top; ++d)
        for (int a = 0; a < x->cells(d); ++a)
            for (int b = 0; b < y->cells(d); ++b)
                bld.add_cell(d, "(" + x->label(d, a) + "," + y->label(d, b) + ")");
    for (int d = 0; d <= top; ++d)
        for (int a = 0; a < x->cells(d); ++a)
            for (int b = 0; b < y->cells(d); ++b) {
                if (d >= 1)
                    for (int i = 0; i <= d; ++i)
                        bld.set_down(d, i, pair_id(d, a, b),
                                     pair_id(d - 1, x->down(d, i, a), y->down(d, i, b)));
                if (d < top)
                    for (int i = 0; i <= d; ++i)
                        bld.set_up(d, i, pair_id(d, a, b),
                                   pair_id(d + 1, x->up(d, i, a), y->up(d, i, b)));
            }
    return bld.finish();
}

// ---------------------------------------------------------------------------
// Finite categories and nerves
// ---------------------------------------------------------------------------

void FinCategory::validate() const {
    require_semantic(static_cast<int>(identity.size()) == objects(), "identity table size");
    require_semantic(mor_src.size() == mor_tgt.size() && mor_src.size() == mor_names.size(),
                     "morphism table sizes");
    require_semantic(then_table.size() == mor_src.size(), "composition table size");
    for (int x = 0; x < objects(); ++x) {
        const int e = identity[x];
        require_semantic(mor_src[e] == x && mor_tgt[e] == x, "identity endpoints");
    }
    for (int f = 0; f < morphisms(); ++f) {
        require_semantic(static_cast<int>(then_table[f].size()) == morphisms(),
                         "composition row size");
        require_semantic(then(identity[mor_src[f]], f) == f, "left unit law");
        require_semantic(then(f, identity[mor_tgt[f]]) == f, "right unit law");
        for (int g = 0; g < morphisms(); ++g) {
            const bool composable = mor_tgt[f] == mor_src[g];
            const int fg = then(f, g);
            require_semantic(composable == (fg >= 0), "composability mismatch");
            if (!composable) continue;
            require_semantic(mor_src[fg] == mor_src[f] && mor_tgt[fg] == mor_tgt[g],
                             "composite endpoints");
            for (int h = 0; h < morphisms(); ++h) {
                if (mor_tgt[g] != mor_src[h]) continue;
                require_semantic(then(fg, h) == then(f, then(g, h)), "associativity");
            }
        }
    }
}

namespace {

FinCategory poset_category(const std::vector<std::string>& names,
                           const std::function<bool(int, int)>& leq) {
    FinCategory c;
    c.object_names = names;
    const int n = c.objects();
    std::vector<std::vector<int>> mor(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (leq(x, y)) {
                mor[x][y] = c.morphisms();
                c.mor_src.push_back(x);
                c.mor_tgt.push_back(y);
                c.mor_names.push_back(names[x] + "<=" + names[y]);
            }
    c.identity.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) c.identity[x] = mor[x][x];
    c.then_table.assign(c.mor_src.size(), std::vector<int>(c.mor_src.size(), -1));
    for (int f = 0; f < c.morphisms(); ++f)
        for (int g = 0; g < c.morphisms(); ++g)
            if (c.mor_tgt[f] == c.mor_src[g])
                c.then_table[f][g] = mor[c.mor_src[f]][c.mor_tgt[g]];
    c.validate();
    return c;
}

} // namespace

FinCategory FinCategory::chain(int n) {
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
    return poset_category(names, [](int x, int y) { return x <= y; });
}

FinCategory FinCategory::square() { return cube_poset(2); }

FinCategory FinCategory::cube_poset(int n) {
    std::vector<std::string> names;
    for (std::uint32_t v = 0; v < (1u << n); ++v) names.push_back(vertex_to_string(v, n));
    return poset_category(names, [&](int x, int y) {
        return (std::uint32_t(x) & std::uint32_t(y)) == std::uint32_t(x);
    });
}

PshPtr nerve_of_category(const FinCategory& c, int trunc) {
    c.validate();
    PresheafBuilder bld(&g_simplicial_site, trunc);
    // a k-cell: (base object, k composable morphisms)
    std::vector<std::vector<std::pair<int, std::vector<int>>>> chains(
        static_cast<std::size_t>(trunc) + 1);
    std::vector<std::map<std::pair<int, std::vector<int>>, int>> index(
        static_cast<std::size_t>(trunc) + 1);
    for (int x = 0; x < c.objects(); ++x) chains[0].push_back({x, {}});
    for (int k = 1; k <= trunc; ++k)
        for (const auto& [base, ms] : chains[k - 1]) {
            const int end = ms.empty() ? base : c.mor_tgt[ms.back()];
            for (int f = 0; f < c.morphisms(); ++f)
                if (c.mor_src[f] == end) {
                    auto ext = ms;
                    ext.push_back(f);
                    chains[k].push_back({base, ext});
                }
        }
    for (int k = 0; k <= trunc; ++k)
        for (std::size_t i = 0; i < chains[k].size(); ++i) {
            const auto& [base, ms] = chains[k][i];
            std::string lbl = c.object_names[base];
            for (int f : ms) lbl += "|" + c.mor_names[f];
            bld.add_cell(k, lbl);
            index[k][chains[k][i]] = static_cast<int>(i);
        }
    for (int k = 0; k <= trunc; ++k)
        for (std::size_t i = 0; i < chains[k].size(); ++i) {
            const auto& [base, ms] = chains[k][i];
            if (k >= 1)
                for (int t = 0; t <= k; ++t) {
                    std::pair<int, std::vector<int>> img;
                    if (t == 0) {
                        img.first = c.mor_tgt[ms[0]];
                        img.second.assign(ms.begin() + 1, ms.end());
                    } else if (t == k) {
                        img = {base, std::vector<int>(ms.begin(), ms.end() - 1)};
                    } else {
                        img = {base, {}};
                        for (int u = 0; u < k; ++u) {
                            if (u == t - 1) continue;
                            if (u == t)
                                img.second.push_back(c.then(ms[t - 1], ms[t]));
                            else
                                img.second.push_back(ms[u]);
                        }
                    }
                    bld.set_down(k, t, static_cast<int>(i), index[k - 1].at(img));
                }
            if (k < trunc)
                for (int t = 0; t <= k; ++t) {
                    std::pair<int, std::vector<int>> img{base, {}};
                    int at = base;
                    for (int u = 0; u < t; ++u) {
                        img.second.push_back(ms[u]);
                        at = c.mor_tgt[ms[u]];
                    }
                    img.second.push_back(c.identity[at]);
                    for (int u = t; u < k; ++u) img.second.push_back(ms[u]);
                    bld.set_up(k, t, static_cast<int>(i), index[k + 1].at(img));
                }
        }
    return bld.finish();
}

// ---------------------------------------------------------------------------
// The cocubical object n -> nerve({0<1}^n) and triangulation
// ---------------------------------------------------------------------------

namespace {

// monotone chains of k+1 packed vertices of {0,1}^n, lexicographic order
const std::vector<std::vector<std::uint32_t>>& vertex_chains(int n, int k) {
    static std::map<std::pair<int, int>, std::vector<std::vector<std::uint32_t>>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
    std::vector<std::vector<std::uint32_t>> out;
    const std::uint32_t count = 1u << n;
    std::vector<std::uint32_t> cur;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == k + 1) {
            out.push_back(cur);
            return;
        }
        if (cur.empty()) {
            for (std::uint32_t v = 0; v < count; ++v) {
                cur.push_back(v);
                self(self);
                cur.pop_back();
            }
        } else {
            // supersets of the previous vertex, ascending
            const std::uint32_t prev = cur.back();
            std::uint32_t s = prev;
            while (true) {
                cur.push_back(s);
                self(self);
                cur.pop_back();
                if (s == count - 1) break;
                s = (s + 1) | prev;
            }
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return cache.emplace(std::make_pair(n, k), std::move(out)).first->second;
}

int chain_index(int n, int k, std::span<const std::uint32_t> chain) {
    const auto& all = vertex_chains(n, k);
    std::vector<std::uint32_t> key(chain.begin(), chain.end());
    const auto it = std::lower_bound(all.begin(), all.end(), key);
    require_semantic(it != all.end() && *it == key, "vertex chain not found");
    return static_cast<int>(it - all.begin());
}

std::string chain_label(int n, std::span<const std::uint32_t> chain) {
    std::string s;
    for (std::size_t t = 0; t < chain.size(); ++t) {
        if (t) s += '<';
        s += vertex_to_string(chain[t], n);
    }
    return s;
}

PshPtr build_cube_nerve(int n, int trunc) {
    PresheafBuilder bld(&g_simplicial_site, trunc);
    for (int k = 0; k <= trunc; ++k)
        for (const auto& ch : vertex_chains(n, k)) bld.add_cell(k, chain_label(n, ch));
    for (int k = 0; k <= trunc; ++k) {
        const auto& chains = vertex_chains(n, k);
        for (std::size_t c = 0; c < chains.size(); ++c) {
            if (k >= 1)
                for (int i = 0; i <= k; ++i) {
                    auto w = chains[c];
                    w.erase(w.begin() + i);
                    bld.set_down(k, i, static_cast<int>(c), chain_index(n, k - 1, w));
                }
            if (k < trunc)
                for (int i = 0; i <= k; ++i) {
                    auto w = chains[c];
                    w.insert(w.begin() + i, w[static_cast<std::size_t>(i)]);
                    bld.set_up(k, i, static_cast<int>(c), chain_index(n, k + 1, w));
                }
        }
    }
    return bld.finish();
}

} // namespace

PshPtr cube_nerve(int n, int trunc) {
    static std::map<std::pair<int, int>, PshPtr> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, trunc});
    if (it != cache.end()) return it->second;
    return cache.emplace(std::make_pair(n, trunc), build_cube_nerve(n, trunc)).first->second;
}

int cube_nerve_cell(int n, int /*trunc*/, int k, std::span<const std::uint32_t> chain) {
    return chain_index(n, k, chain);
}

PresheafMap cube_nerve_map(const CubeWord& w, int trunc) {
    const CubeFunction fn = eval(w);
    PresheafMap m{cube_nerve(fn.src_dim(), trunc), cube_nerve(fn.tgt_dim(), trunc), {}};
    m.cells.resize(static_cast<std::size_t>(trunc) + 1);
    for (int k = 0; k <= trunc; ++k) {
        const auto& chains = vertex_chains(fn.src_dim(), k);
        m.cells[k].reserve(chains.size());
        for (const auto& ch : chains) {
            std::vector<std::uint32_t> img(ch.size());
            for (std::size_t t = 0; t < ch.size(); ++t) img[t] = fn.apply(ch[t]);
            m.cells[k].push_back(chain_index(fn.tgt_dim(), k, img));
        }
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// Triangulation
// ---------------------------------------------------------------------------

namespace {

class UnionFind {
public:
    explicit UnionFind(std::uint64_t n) : parent_(n) {
        for (std::uint64_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::uint64_t find(std::uint64_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::uint64_t x, std::uint64_t y) {
        x = find(x);
        y = find(y);
        if (x != y) parent_[std::max(x, y)] = std::min(x, y);
    }

private:
    std::vector<std::uint64_t> parent_;
};

} // namespace

std::uint64_t Triangulation::pair_index(int k, int p, int x,
                                        std::span<const std::uint32_t> chain) const {
    std::uint64_t base = 0;
    for (int pp = 0; pp < p; ++pp)
        base += std::uint64_t(source_->cells(pp)) * vertex_chains(pp, k).size();
    return base + std::uint64_t(x) * vertex_chains(p, k).size()
           + std::uint64_t(chain_index(p, k, chain));
}

Triangulation::Triangulation(PshPtr cubical) : source_(std::move(cubical)) {
    require_semantic(is_cubical(*source_), "triangulation needs a cubical set");
    const Flavor f = cubical_flavor(*source_);
    const int top = source_->trunc();
    const int mx = source_->skeleton();
    reps_.resize(static_cast<std::size_t>(top) + 1);
    class_of_pair_.resize(static_cast<std::size_t>(top) + 1);
    PresheafBuilder bld(&g_simplicial_site, top);

    for (int k = 0; k <= top; ++k) {
        std::uint64_t total = 0;
        for (int p = 0; p <= mx; ++p)
            total += std::uint64_t(source_->cells(p)) * vertex_chains(p, k).size();
        if (total > limits().max_candidates)
            fail_guard("triangulation pair set exceeds candidate guard");
        UnionFind uf(total);
        for (int p = 0; p <= mx; ++p) {
            std::vector<std::pair<Gen, int>> gens;
            if (p >= 1)
                for (int i = 0; i < p; ++i)
                    for (int e = 0; e <= 1; ++e)
                        gens.emplace_back(Gen::face(e, i), face_action_index(e, i));
            if (p + 1 <= mx) {
                for (int i = 0; i <= p; ++i) gens.emplace_back(Gen::degen(i), degen_action_index(i));
                if (f == Flavor::connections)
                    for (int i = 0; i + 1 <= p; ++i)
                        gens.emplace_back(Gen::conn(i), conn_action_index(p, i));
            }
            for (const auto& [letter, kk] : gens) {
                const bool downward = letter.kind == GenKind::face;
                const int a = p - gen_delta(letter);
                const auto& chains = vertex_chains(a, k);
                // chain image under the letter, per chain
                std::vector<int> cmap(chains.size());
                for (std::size_t ci = 0; ci < chains.size(); ++ci) {
                    std::vector<std::uint32_t> img(chains[ci].size());
                    for (std::size_t t = 0; t < chains[ci].size(); ++t)
                        img[t] = gen_apply(letter, a, chains[ci][t]);
                    cmap[ci] = chain_index(p, k, img);
                }
                for (int x = 0; x < source_->cells(p); ++x) {
                    const int xim = downward ? source_->down(p, kk, x) : source_->up(p, kk, x);
                    for (std::size_t ci = 0; ci < chains.size(); ++ci)
                        uf.unite(pair_index(k, a, xim, chains[ci]),
                                 pair_index(k, p, x, vertex_chains(p, k)[cmap[ci]]));
                }
            }
        }
        class_of_pair_[k].assign(total, -1);
        for (int p = 0; p <= mx; ++p)
            for (int x = 0; x < source_->cells(p); ++x)
                for (const auto& ch : vertex_chains(p, k)) {
                    const std::uint64_t t = pair_index(k, p, x, ch);
                    const std::uint64_t r = uf.find(t);
                    if (class_of_pair_[k][r] == -1) {
                        const std::string lbl = std::to_string(p) + "." + source_->label(p, x) + "|"
                                                + chain_label(p, ch);
                        class_of_pair_[k][r] = bld.add_cell(k, lbl);
                        reps_[k].push_back({p, x, ch});
                    }
                    class_of_pair_[k][t] = class_of_pair_[k][r];
                }
    }
    for (int k = 0; k <= top; ++k)
        for (std::size_t c = 0; c < reps_[k].size(); ++c) {
            const Pair& r = reps_[k][c];
            if (k >= 1)
                for (int i = 0; i <= k; ++i) {
                    auto w = r.chain;
                    w.erase(w.begin() + i);
                    bld.set_down(k, i, static_cast<int>(c), class_of(k - 1, r.p, r.x, w));
                }
            if (k < top)
                for (int i = 0; i <= k; ++i) {
                    auto w = r.chain;
                    w.insert(w.begin() + i, w[static_cast<std::size_t>(i)]);
                    bld.set_up(k, i, static_cast<int>(c), class_of(k + 1, r.p, r.x, w));
                }
        }
    object_ = bld.finish();
}

int Triangulation::class_of(int k, int p, int x, std::span<const std::uint32_t> chain) const {
    std::vector<std::uint32_t> ch(chain.begin(), chain.end());
    const Flavor f = cubical_flavor(*source_);
    while (p > source_->skeleton()) {
        bool reduced = false;
        for (int kk = 0; kk < source_->site().up_count(p - 1) && !reduced; ++kk)
            for (int c = 0; c < source_->cells(p - 1) && !reduced; ++c)
                if (source_->up(p - 1, kk, c) == x) {
                    const Gen letter = kk <= p - 1 ? Gen::degen(kk) : Gen::conn(kk - p);
                    for (auto& v : ch) v = gen_apply(letter, p, v);
                    x = c;
                    --p;
                    reduced = true;
                }
        require_semantic(reduced, "cell above skeleton with no degeneracy witness");
        (void)f;
    }
    return class_of_pair_[k][pair_index(k, p, x, ch)];
}

PresheafMap triangulate_map(const Triangulation& src, const Triangulation& tgt,
                            const PresheafMap& f) {
    require_semantic(f.src.get() == src.source().get() && f.tgt.get() == tgt.source().get(),
                     "triangulate_map endpoints mismatch");
    const int top = src.object()->trunc();
    PresheafMap out{src.object(), tgt.object(), {}};
    out.cells.resize(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) {
        out.cells[k].resize(static_cast<std::size_t>(src.object()->cells(k)));
        for (int c = 0; c < src.object()->cells(k); ++c) {
            const auto& r = src.rep(k, c);
            out.cells[k][static_cast<std::size_t>(c)] =
                tgt.class_of(k, r.p, f.cells[r.p][r.x], r.chain);
        }
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// The right adjoint
// ---------------------------------------------------------------------------

PshPtr cubical_singular(const PshPtr& y, Flavor flavor, int trunc) {
    require_semantic(is_simplicial(*y), "cubical_singular needs a simplicial set");
    const int strunc = y->trunc();
    // enumerate hom(cube_nerve(n), Y) for each n
    std::vector<std::vector<PresheafMap>> maps(static_cast<std::size_t>(trunc) + 1);
    for (int n = 0; n <= trunc; ++n) maps[n] = hom_maps(cube_nerve(n, strunc), y);
    auto find_map = [&](int n, const std::vector<std::vector<int>>& cells) {
        const auto& v = maps[n];
        auto it = std::lower_bound(v.begin(), v.end(), cells,
                                   [](const PresheafMap& m, const std::vector<std::vector<int>>& c) {
                                       return m.cells < c;
                                   });
        require_semantic(it != v.end() && it->cells == cells, "precomposed map not found");
        return static_cast<int>(it - v.begin());
    };
    PresheafBuilder bld(&cubical_site(flavor), trunc);
    for (int n = 0; n <= trunc; ++n)
        for (std::size_t i = 0; i < maps[n].size(); ++i) bld.add_cell(n, "m" + std::to_string(i));
    for (int n = 0; n <= trunc; ++n)
        for (std::size_t i = 0; i < maps[n].size(); ++i) {
            auto act = [&](const CubeWord& w) {
                // phi o L(w) where L(w) = cube_nerve_map(w)
                PresheafMap lw = cube_nerve_map(w, strunc);
                return find_map(w.src_dim(), compose(maps[n][i], lw).cells);
            };
            if (n >= 1)
                for (int i2 = 0; i2 < n; ++i2)
                    for (int e = 0; e <= 1; ++e)
                        bld.set_down(n, face_action_index(e, i2), static_cast<int>(i),
                                     act(CubeWord(flavor, n - 1, {{e, i2}}, {}, {})));
            if (n < trunc) {
                for (int i2 = 0; i2 <= n; ++i2)
                    bld.set_up(n, degen_action_index(i2), static_cast<int>(i),
                               act(CubeWord(flavor, n + 1, {}, {}, {i2})));
                if (flavor == Flavor::connections)
                    for (int i2 = 0; i2 < n; ++i2)
                        bld.set_up(n, conn_action_index(n, i2), static_cast<int>(i),
                                   act(CubeWord(flavor, n + 1, {}, {i2}, {})));
            }
        }
    return bld.finish();
}

HornFillReport inner_horn_fill_probe(const PshPtr& x, int n, int k) {
    require_semantic(is_simplicial(*x), "horn probe needs a simplicial set");
    require_semantic(n <= x->trunc(), "horn dimension above truncation");
    require_semantic(k > 0 && k < n, "inner horn needs 0 < k < n");
    auto horn = simplicial_horn(n, k, x->trunc());
    HornFillReport report;
    for (const PresheafMap& u : hom_maps(horn.object, x)) {
        ++report.total;
        if (extensions(horn.inclusion, u, 1).empty()) ++report.unfillable;
    }
    return report;
}

} // namespace cubix
