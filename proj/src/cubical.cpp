#include "cubix/cubical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "cubix/error.hpp"
#include "cubix/limits.hpp"

namespace cubix {

// ---------------------------------------------------------------------------
// Site
// ---------------------------------------------------------------------------

int face_action_index(int sign, int i) { return 2 * i + sign; }
int degen_action_index(int i) { return i; }
int conn_action_index(int cell_dim, int i) { return cell_dim + 1 + i; }

namespace {

std::vector<ActionRef> to_action_path(std::span<const Gen> letters, int tgt_dim) {
    std::vector<ActionRef> path;
    int d = tgt_dim;
    for (const Gen& g : letters) {
        switch (g.kind) {
            case GenKind::face:
                path.push_back({false, face_action_index(g.sign, g.index)});
                --d;
                break;
            case GenKind::degen:
                path.push_back({true, degen_action_index(g.index)});
                ++d;
                break;
            case GenKind::conn:
                path.push_back({true, conn_action_index(d, g.index)});
                ++d;
                break;
        }
    }
    return path;
}

class CubicalSite final : public Site {
public:
    explicit CubicalSite(Flavor f) : flavor_(f) {}

    std::string name() const override {
        return flavor_ == Flavor::reduced ? "cubical-r" : "cubical-c";
    }
    int down_count(int dim) const override { return 2 * dim; }
    int up_count(int dim) const override {
        return (dim + 1) + (flavor_ == Flavor::connections ? dim : 0);
    }
    std::string down_name(int, int k) const override {
        return std::string(k % 2 ? "d1@" : "d0@") + std::to_string(k / 2);
    }
    std::string up_name(int dim, int k) const override {
        if (k <= dim) return "s@" + std::to_string(k);
        return "g@" + std::to_string(k - dim - 1);
    }

    std::vector<RelationInstance> relations(int trunc) const override;

    Flavor flavor() const { return flavor_; }

private:
    Flavor flavor_;
};

std::vector<RelationInstance> CubicalSite::relations(int trunc) const {
    std::vector<RelationInstance> out;
    // add a relation lhs = rhs of words with source src; paths start at the
    // words' common target and must stay within [0, trunc]
    auto add = [&](int src, const std::vector<Gen>& lhs, const std::vector<Gen>& rhs) {
        int tgt = src;
        for (const Gen& g : lhs) tgt += gen_delta(g);
        auto ok = [&](const std::vector<Gen>& w) {
            int d = tgt;
            if (d < 0 || d > trunc) return false;
            for (const Gen& g : w) {
                d -= gen_delta(g); // walking the contravariant path
                if (d < 0 || d > trunc) return false;
            }
            return true;
        };
        if (!ok(lhs) || !ok(rhs)) return;
        out.push_back({tgt, to_action_path(lhs, tgt), to_action_path(rhs, tgt)});
    };
    const bool conn = flavor_ == Flavor::connections;
    for (int n = 0; n <= trunc; ++n) {
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (int e = 0; e <= 1; ++e)
                    for (int e2 = 0; e2 <= 1; ++e2)
                        add(n, {Gen::face(e, i), Gen::face(e2, j)},
                            {Gen::face(e2, j + 1), Gen::face(e, i)});
        for (int j = 0; j <= n - 1; ++j)
            for (int i = j; i <= n - 2; ++i)
                add(n, {Gen::degen(i), Gen::degen(j)}, {Gen::degen(j), Gen::degen(i + 1)});
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                for (int e = 0; e <= 1; ++e) {
                    if (i < j)
                        add(n, {Gen::degen(i), Gen::face(e, j)}, {Gen::face(e, j - 1), Gen::degen(i)});
                    else if (i == j)
                        add(n, {Gen::degen(i), Gen::face(e, j)}, {});
                    else
                        add(n, {Gen::degen(i), Gen::face(e, j)}, {Gen::face(e, j), Gen::degen(i - 1)});
                }
        if (!conn) continue;
        for (int j = 0; j <= n - 2; ++j)
            for (int i = j; i <= n - 3; ++i)
                add(n, {Gen::conn(i), Gen::conn(j)}, {Gen::conn(j), Gen::conn(i + 1)});
        for (int j = 0; j <= n - 2; ++j)
            for (int i = 0; i <= n - 2; ++i) {
                if (i < j)
                    add(n, {Gen::degen(i), Gen::conn(j)}, {Gen::conn(j - 1), Gen::degen(i)});
                else if (i == j)
                    add(n, {Gen::degen(i), Gen::conn(j)}, {Gen::degen(i), Gen::degen(i)});
                else
                    add(n, {Gen::degen(i), Gen::conn(j)}, {Gen::conn(j), Gen::degen(i + 1)});
            }
        for (int i = 0; i <= n - 1; ++i)
            for (int j = 0; j <= n; ++j)
                for (int e = 0; e <= 1; ++e) {
                    if (j == i || j == i + 1) {
                        if (e == 0)
                            add(n, {Gen::conn(i), Gen::face(0, j)}, {});
                        else
                            add(n, {Gen::conn(i), Gen::face(1, j)}, {Gen::face(1, i), Gen::degen(i)});
                    } else if (j > i + 1) {
                        add(n, {Gen::conn(i), Gen::face(e, j)}, {Gen::face(e, j - 1), Gen::conn(i)});
                    } else {
                        add(n, {Gen::conn(i), Gen::face(e, j)}, {Gen::face(e, j), Gen::conn(i - 1)});
                    }
                }
    }
    return out;
}

const CubicalSite g_site_r{Flavor::reduced};
const CubicalSite g_site_c{Flavor::connections};

} // namespace

const Site& cubical_site(Flavor f) {
    return f == Flavor::reduced ? g_site_r : g_site_c;
}

bool is_cubical(const Presheaf& x) {
    return &x.site() == &g_site_r || &x.site() == &g_site_c;
}

Flavor cubical_flavor(const Presheaf& x) {
    require_semantic(is_cubical(x), "expected a cubical set");
    return &x.site() == &g_site_r ? Flavor::reduced : Flavor::connections;
}

int act_word(const Presheaf& x, const CubeWord& w, int cell) {
    require_semantic(is_cubical(x), "act_word on a non-cubical presheaf");
    require_semantic(w.tgt_dim() <= x.trunc() && w.src_dim() <= x.trunc(),
                     "word action exceeds truncation");
    const auto letters = w.letters();
    return x.act_path(w.tgt_dim(), to_action_path(letters, w.tgt_dim()), cell);
}

PshPtr empty_presheaf(const Site* site, int trunc) {
    PresheafBuilder bld(site, trunc);
    return bld.finish();
}

// ---------------------------------------------------------------------------
// Hom tables
// ---------------------------------------------------------------------------

namespace {

std::string word_key(const CubeWord& w) {
    std::string k;
    k.reserve(2 + 2 * (w.faces().size() + w.conns().size() + w.degens().size()));
    for (const auto& [s, i] : w.faces()) {
        k += char('a' + s);
        k += char(i);
    }
    k += '|';
    for (int i : w.conns()) k += char(i);
    k += '|';
    for (int i : w.degens()) k += char(i);
    return k;
}

struct HomTableEntry {
    HomTable table;
    std::unordered_map<std::string, int> index;
};

const HomTableEntry& hom_entry(Flavor f, int m, int n) {
    static std::map<std::tuple<int, int, int>, HomTableEntry> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(int(f), m, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    HomTableEntry e;
    e.table.words = enumerate_homs(f, m, n);
    for (std::size_t i = 0; i < e.table.words.size(); ++i)
        e.index[word_key(e.table.words[i])] = static_cast<int>(i);
    return cache.emplace(key, std::move(e)).first->second;
}

} // namespace

int HomTable::index_of(const CubeWord& w) const {
    for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i] == w) return static_cast<int>(i);
    return -1;
}

const HomTable& hom_table(Flavor f, int m, int n) { return hom_entry(f, m, n).table; }

int hom_index(const CubeWord& w) {
    const auto& e = hom_entry(w.flavor(), w.src_dim(), w.tgt_dim());
    const auto it = e.index.find(word_key(w));
    require_semantic(it != e.index.end(), "word not found in its hom table");
    return it->second;
}

// ---------------------------------------------------------------------------
// Representables and their subobjects
// ---------------------------------------------------------------------------

namespace {

PshPtr build_representable(Flavor f, int n, int trunc) {
    const Site* site = &cubical_site(f);
    PresheafBuilder bld(site, trunc);
    std::vector<const HomTableEntry*> level(static_cast<std::size_t>(trunc) + 1);
    for (int m = 0; m <= trunc; ++m) {
        level[m] = &hom_entry(f, m, n);
        for (const CubeWord& w : level[m]->table.words) bld.add_cell(m, to_string(w));
    }
    for (int m = 0; m <= trunc; ++m) {
        const auto& words = level[m]->table.words;
        for (std::size_t c = 0; c < words.size(); ++c) {
            if (m >= 1)
                for (int i = 0; i < m; ++i)
                    for (int e = 0; e <= 1; ++e) {
                        CubeWord face(f, m - 1, {{e, i}}, {}, {});
                        const int img = level[m - 1]->index.at(word_key(compose(words[c], face)));
                        bld.set_down(m, face_action_index(e, i), static_cast<int>(c), img);
                    }
            if (m < trunc) {
                for (int i = 0; i <= m; ++i) {
                    CubeWord degen(f, m + 1, {}, {}, {i});
                    const int img = level[m + 1]->index.at(word_key(compose(words[c], degen)));
                    bld.set_up(m, degen_action_index(i), static_cast<int>(c), img);
                }
                if (f == Flavor::connections)
                    for (int i = 0; i < m; ++i) {
                        CubeWord conn(f, m + 1, {}, {i}, {});
                        const int img = level[m + 1]->index.at(word_key(compose(words[c], conn)));
                        bld.set_up(m, conn_action_index(m, i), static_cast<int>(c), img);
                    }
            }
        }
    }
    return bld.finish();
}

} // namespace

PshPtr cubical_representable(Flavor f, int n, int trunc) {
    static std::map<std::tuple<int, int, int>, PshPtr> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(int(f), n, trunc);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, build_representable(f, n, trunc)).first->second;
}

PresheafMap representable_map(const CubeWord& u, int trunc) {
    const Flavor f = u.flavor();
    PresheafMap m{cubical_representable(f, u.src_dim(), trunc),
                  cubical_representable(f, u.tgt_dim(), trunc),
                  {}};
    m.cells.resize(static_cast<std::size_t>(trunc) + 1);
    for (int d = 0; d <= trunc; ++d) {
        const auto& src_words = hom_table(f, d, u.src_dim()).words;
        const auto& tgt = hom_entry(f, d, u.tgt_dim());
        m.cells[d].reserve(src_words.size());
        for (const CubeWord& w : src_words)
            m.cells[d].push_back(tgt.index.at(word_key(compose(u, w))));
    }
    m.validate();
    return m;
}

namespace {

SubobjectResult representable_subobject(Flavor f, int n, int trunc,
                                        const std::function<bool(const CubeWord&)>& keep_word) {
    PshPtr rep = cubical_representable(f, n, trunc);
    std::vector<std::vector<char>> keep(static_cast<std::size_t>(trunc) + 1);
    for (int m = 0; m <= trunc; ++m) {
        const auto& words = hom_table(f, m, n).words;
        keep[m].resize(words.size());
        for (std::size_t c = 0; c < words.size(); ++c)
            keep[m][c] = keep_word(words[c]) ? 1 : 0;
    }
    auto [sub, incl] = subpresheaf(rep, keep);
    return {sub, incl};
}

} // namespace

SubobjectResult cubical_boundary(Flavor f, int n, int trunc) {
    return representable_subobject(f, n, trunc,
                                   [](const CubeWord& w) { return !w.faces().empty(); });
}

SubobjectResult cubical_cap(Flavor f, int n, int eps, int i, int trunc) {
    require_semantic(n >= 1, "cap needs dimension at least 1");
    require_semantic(eps == 0 || eps == 1, "cap sign out of range");
    require_semantic(i >= 0 && i < n, "cap face index out of range");
    return representable_subobject(f, n, trunc, [&](const CubeWord& w) {
        for (const auto& [s, idx] : w.faces())
            if (!(s == eps && idx == i)) return true;
        return false;
    });
}

// ---------------------------------------------------------------------------
// Day tensor
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

std::uint64_t DayTensor::triple_index(int dim, int p, int x, int q, int y, int widx) const {
    const Flavor f = cubical_flavor(*left_);
    const auto& words = hom_table(f, dim, p + q).words;
    return base_[dim][p][q]
           + (std::uint64_t(x) * std::uint64_t(right_->cells(q)) + std::uint64_t(y))
                 * words.size()
           + std::uint64_t(widx);
}

DayTensor::DayTensor(PshPtr left, PshPtr right) : left_(std::move(left)), right_(std::move(right)) {
    require_semantic(is_cubical(*left_) && is_cubical(*right_), "Day tensor needs cubical sets");
    require_semantic(&left_->site() == &right_->site(), "Day tensor across flavors");
    require_semantic(left_->trunc() == right_->trunc(), "Day tensor across truncations");
    const Flavor f = cubical_flavor(*left_);
    const int top = left_->trunc();
    const int mx = left_->skeleton();
    const int my = right_->skeleton();
    require_semantic(mx + my <= top, "Day tensor skeleton bound violated: need M_X + M_Y <= N");

    base_.resize(static_cast<std::size_t>(top) + 1);
    class_of_triple_.resize(static_cast<std::size_t>(top) + 1);
    reps_.resize(static_cast<std::size_t>(top) + 1);

    PresheafBuilder bld(&cubical_site(f), top);

    // quotient each output dimension independently
    for (int n = 0; n <= top; ++n) {
        base_[n].assign(static_cast<std::size_t>(mx) + 1, std::vector<std::uint64_t>(my + 1, 0));
        std::uint64_t total = 0;
        for (int p = 0; p <= mx; ++p)
            for (int q = 0; q <= my; ++q) {
                base_[n][p][q] = total;
                total += std::uint64_t(left_->cells(p)) * std::uint64_t(right_->cells(q))
                         * hom_table(f, n, p + q).words.size();
            }
        if (total > limits().max_candidates)
            fail_guard("Day tensor triple set exceeds candidate guard");
        UnionFind uf(total);

        // letter-composition maps: widx in hom(n, a+q) -> index of (letter o w)
        auto letter_map = [&](const Gen& letter, int target_arity) {
            const int source_arity = target_arity - gen_delta(letter);
            const auto& src_words = hom_entry(f, n, source_arity).table.words;
            const auto& tgt_index = hom_entry(f, n, target_arity).index;
            std::vector<int> map(src_words.size());
            for (std::size_t wi = 0; wi < src_words.size(); ++wi) {
                std::vector<Gen> letters{letter};
                const auto tail = src_words[wi].letters();
                letters.insert(letters.end(), tail.begin(), tail.end());
                map[wi] = tgt_index.at(word_key(normalize_raw(f, n, std::move(letters))));
            }
            return map;
        };

        for (int side = 0; side < 2; ++side) {
            const Presheaf& mine = side == 0 ? *left_ : *right_;
            const Presheaf& other = side == 0 ? *right_ : *left_;
            const int mbound = side == 0 ? mx : my;
            const int obound = side == 0 ? my : mx;
            for (int p = 0; p <= mbound; ++p) {
                for (int q = 0; q <= obound; ++q) {
                    const std::uint64_t wcount_here = hom_table(f, n, p + q).words.size();
                    if (wcount_here == 0) continue;
                    // gather the generator letters h : box^a -> box^p with a <= bound
                    std::vector<std::pair<Gen, int>> gens; // (letter at tensor level, action k)
                    if (p >= 1)
                        for (int i = 0; i < p; ++i)
                            for (int e = 0; e <= 1; ++e)
                                gens.emplace_back(Gen::face(e, i), face_action_index(e, i));
                    if (p + 1 <= mbound) {
                        for (int i = 0; i <= p; ++i)
                            gens.emplace_back(Gen::degen(i), degen_action_index(i));
                        if (f == Flavor::connections)
                            for (int i = 0; i + 1 <= p; ++i)
                                gens.emplace_back(Gen::conn(i), conn_action_index(p, i));
                    }
                    for (auto& [letter, k] : gens) {
                        // on the right side the letter acts past the left block
                        Gen shifted = letter;
                        if (side == 1) shifted.index += q;
                        const int a = p - gen_delta(letter); // cube source dim of h
                        const auto wmap = letter_map(shifted, p + q);
                        const bool downward = letter.kind == GenKind::face;
                        for (int xc = 0; xc < mine.cells(p); ++xc) {
                            const int xim = downward ? mine.down(p, k, xc) : mine.up(p, k, xc);
                            for (int yc = 0; yc < other.cells(q); ++yc) {
                                for (std::size_t wi = 0; wi < wmap.size(); ++wi) {
                                    const std::uint64_t t_low =
                                        side == 0 ? triple_index(n, a, xim, q, yc, int(wi))
                                                  : triple_index(n, q, yc, a, xim, int(wi));
                                    const std::uint64_t t_high =
                                        side == 0 ? triple_index(n, p, xc, q, yc, wmap[wi])
                                                  : triple_index(n, q, yc, p, xc, wmap[wi]);
                                    uf.unite(t_low, t_high);
                                }
                            }
                        }
                    }
                }
            }
        }

        // classes in order of minimal member
        class_of_triple_[n].assign(total, -1);
        for (int p = 0; p <= mx; ++p)
            for (int xc = 0; xc < left_->cells(p); ++xc)
                for (int q = 0; q <= my; ++q)
                    for (int yc = 0; yc < right_->cells(q); ++yc) {
                        const auto& words = hom_table(f, n, p + q).words;
                        for (std::size_t wi = 0; wi < words.size(); ++wi) {
                            const std::uint64_t t = triple_index(n, p, xc, q, yc, int(wi));
                            const std::uint64_t r = uf.find(t);
                            if (class_of_triple_[n][r] == -1) {
                                const std::string lbl = std::to_string(p) + "." + left_->label(p, xc)
                                                        + "|" + std::to_string(q) + "."
                                                        + right_->label(q, yc) + "|"
                                                        + to_string(words[wi]);
                                class_of_triple_[n][r] = bld.add_cell(n, lbl);
                                reps_[n].push_back({p, xc, q, yc, words[wi]});
                            }
                            class_of_triple_[n][t] = class_of_triple_[n][r];
                        }
                    }
    }

    // actions by precomposition on the mediating word
    for (int n = 0; n <= top; ++n) {
        for (std::size_t c = 0; c < reps_[n].size(); ++c) {
            const Triple& t = reps_[n][c];
            if (n >= 1)
                for (int i = 0; i < n; ++i)
                    for (int e = 0; e <= 1; ++e) {
                        CubeWord face(f, n - 1, {{e, i}}, {}, {});
                        const int img = class_of(n - 1, t.p, t.x, t.q, t.y, compose(t.w, face));
                        bld.set_down(n, face_action_index(e, i), static_cast<int>(c), img);
                    }
            if (n < top) {
                for (int i = 0; i <= n; ++i) {
                    CubeWord degen(f, n + 1, {}, {}, {i});
                    const int img = class_of(n + 1, t.p, t.x, t.q, t.y, compose(t.w, degen));
                    bld.set_up(n, degen_action_index(i), static_cast<int>(c), img);
                }
                if (f == Flavor::connections)
                    for (int i = 0; i < n; ++i) {
                        CubeWord conn(f, n + 1, {}, {i}, {});
                        const int img = class_of(n + 1, t.p, t.x, t.q, t.y, compose(t.w, conn));
                        bld.set_up(n, conn_action_index(n, i), static_cast<int>(c), img);
                    }
            }
        }
    }
    object_ = bld.finish();
}

int DayTensor::class_of(int dim, int p, int x, int q, int y, const CubeWord& w) const {
    const Flavor f = cubical_flavor(*left_);
    CubeWord word = w;
    // pull degenerate coordinates down into the skeleton bounds
    while (p > left_->skeleton() || q > right_->skeleton()) {
        bool reduced = false;
        if (p > left_->skeleton()) {
            for (int k = 0; k < left_->site().up_count(p - 1) && !reduced; ++k)
                for (int c = 0; c < left_->cells(p - 1) && !reduced; ++c)
                    if (left_->up(p - 1, k, c) == x) {
                        const std::string nm = left_->site().up_name(p - 1, k);
                        CubeWord h = parse_word(f, nm, p);
                        word = compose(tensor_word(h, CubeWord::identity(f, q)), word);
                        x = c;
                        --p;
                        reduced = true;
                    }
        } else {
            for (int k = 0; k < right_->site().up_count(q - 1) && !reduced; ++k)
                for (int c = 0; c < right_->cells(q - 1) && !reduced; ++c)
                    if (right_->up(q - 1, k, c) == y) {
                        const std::string nm = right_->site().up_name(q - 1, k);
                        CubeWord h = parse_word(f, nm, q);
                        word = compose(tensor_word(CubeWord::identity(f, p), h), word);
                        y = c;
                        --q;
                        reduced = true;
                    }
        }
        require_semantic(reduced, "cell above skeleton with no degeneracy witness");
    }
    const auto& entry = hom_entry(f, dim, p + q);
    const auto it = entry.index.find(word_key(word));
    require_semantic(it != entry.index.end(), "mediating word outside its hom-set");
    return class_of_triple_[dim][triple_index(dim, p, x, q, y, it->second)];
}

int DayTensor::pure(int dim_x, int x, int dim_y, int y) const {
    const Flavor f = cubical_flavor(*left_);
    return class_of(dim_x + dim_y, dim_x, x, dim_y, y, CubeWord::identity(f, dim_x + dim_y));
}

PresheafMap day_tensor_map(const DayTensor& src, const DayTensor& tgt, const PresheafMap& f,
                           const PresheafMap& g) {
    require_semantic(f.src.get() == src.left().get() && g.src.get() == src.right().get(),
                     "day_tensor_map: source mismatch");
    require_semantic(f.tgt.get() == tgt.left().get() && g.tgt.get() == tgt.right().get(),
                     "day_tensor_map: target mismatch");
    const int top = src.object()->trunc();
    PresheafMap out{src.object(), tgt.object(), {}};
    out.cells.resize(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        out.cells[n].resize(static_cast<std::size_t>(src.object()->cells(n)));
        for (int c = 0; c < src.object()->cells(n); ++c) {
            const auto& t = src.rep(n, c);
            out.cells[n][static_cast<std::size_t>(c)] =
                tgt.class_of(n, t.p, f.cells[t.p][t.x], t.q, g.cells[t.q][t.y], t.w);
        }
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Cap filling
// ---------------------------------------------------------------------------

FillReport cap_fill_check(const PshPtr& x, int n, int eps, int i) {
    require_semantic(is_cubical(*x), "cap_fill_check needs a cubical set");
    require_semantic(n <= x->trunc(), "cap dimension above truncation");
    const Flavor f = cubical_flavor(*x);
    auto cap = cubical_cap(f, n, eps, i, x->trunc());
    FillReport report;
    for (const PresheafMap& u : hom_maps(cap.object, x)) {
        ++report.total;
        if (extensions(cap.inclusion, u, 1).empty()) ++report.unfillable;
    }
    return report;
}

} // namespace cubix
