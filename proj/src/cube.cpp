#include "cubix/cube.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "cubix/error.hpp"
#include "cubix/limits.hpp"

namespace cubix {

Limits& limits() {
    static Limits instance;
    return instance;
}

std::string to_string(Flavor f) {
    return f == Flavor::reduced ? "r" : "c";
}

Flavor flavor_from_char(char c) {
    if (c == 'r') return Flavor::reduced;
    if (c == 'c') return Flavor::connections;
    fail_parse(std::string("unknown flavor '") + c + "', expected 'r' or 'c'");
}

// ---------------------------------------------------------------------------
// CubeFunction and vertex arithmetic
// ---------------------------------------------------------------------------

CubeFunction::CubeFunction(int src_dim, int tgt_dim, std::vector<std::uint32_t> table)
    : src_dim_(src_dim), tgt_dim_(tgt_dim), table_(std::move(table)) {
    require_semantic(src_dim >= 0 && tgt_dim >= 0, "negative cube dimension");
    require_semantic(table_.size() == (std::size_t(1) << src_dim),
                     "cube function table has wrong length");
    for (std::uint32_t v : table_)
        require_semantic(v < (std::uint32_t(1) << tgt_dim), "table entry out of range");
}

CubeFunction CubeFunction::identity(int n) {
    std::vector<std::uint32_t> t(std::size_t(1) << n);
    for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = v;
    return CubeFunction(n, n, std::move(t));
}

std::uint32_t vertex_insert(std::uint32_t v, int dim, int pos, int bit) {
    const std::uint32_t low_mask = (pos == dim) ? 0u : ((1u << (dim - pos)) - 1u);
    const std::uint32_t high = (pos == dim) ? v : (v >> (dim - pos));
    const std::uint32_t low = v & low_mask;
    return (high << (dim + 1 - pos)) | (std::uint32_t(bit) << (dim - pos)) | low;
}

std::uint32_t vertex_erase(std::uint32_t v, int dim, int pos) {
    const std::uint32_t high = v >> (dim - pos);
    const std::uint32_t low_mask = (pos == dim - 1) ? 0u : ((1u << (dim - 1 - pos)) - 1u);
    const std::uint32_t low = v & low_mask;
    return (high << (dim - 1 - pos)) | low;
}

std::uint32_t vertex_merge_max(std::uint32_t v, int dim, int pos) {
    const int a = vertex_coord(v, dim, pos);
    const int b = vertex_coord(v, dim, pos + 1);
    const std::uint32_t high = v >> (dim - pos);
    const std::uint32_t low_mask = (pos == dim - 2) ? 0u : ((1u << (dim - 2 - pos)) - 1u);
    const std::uint32_t low = v & low_mask;
    return (high << (dim - 1 - pos)) | (std::uint32_t(a | b) << (dim - 2 - pos)) | low;
}

std::string vertex_to_string(std::uint32_t v, int dim) {
    if (dim == 0) return "*";
    std::string s(static_cast<std::size_t>(dim), '0');
    for (int p = 0; p < dim; ++p)
        if (vertex_coord(v, dim, p)) s[static_cast<std::size_t>(p)] = '1';
    return s;
}

std::uint32_t gen_apply(const Gen& g, int at_dim, std::uint32_t v) {
    switch (g.kind) {
        case GenKind::face: return vertex_insert(v, at_dim, g.index, g.sign);
        case GenKind::degen: return vertex_erase(v, at_dim, g.index);
        case GenKind::conn: return vertex_merge_max(v, at_dim, g.index);
    }
    fail_semantic("corrupt generator");
}

CubeFunction gen_function(const Gen& g, int at_dim) {
    const int tgt = at_dim + gen_delta(g);
    std::vector<std::uint32_t> t(std::size_t(1) << at_dim);
    for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = gen_apply(g, at_dim, v);
    return CubeFunction(at_dim, tgt, std::move(t));
}

CubeFunction compose_fn(const CubeFunction& g, const CubeFunction& f) {
    require_semantic(f.tgt_dim() == g.src_dim(), "cube functions not composable");
    std::vector<std::uint32_t> t(std::size_t(1) << f.src_dim());
    for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = g.apply(f.apply(v));
    return CubeFunction(f.src_dim(), g.tgt_dim(), std::move(t));
}

CubeFunction tensor_fn(const CubeFunction& f, const CubeFunction& g) {
    const int m = f.src_dim() + g.src_dim();
    const int n = f.tgt_dim() + g.tgt_dim();
    std::vector<std::uint32_t> t(std::size_t(1) << m);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        for (std::uint32_t y = 0; y < g.size(); ++y)
            t[(x << g.src_dim()) | y] = (f.apply(x) << g.tgt_dim()) | g.apply(y);
    return CubeFunction(m, n, std::move(t));
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

namespace {

// Checks index ranges letter by letter, right to left from src_dim.
// Returns tgt_dim.
int check_letters(Flavor flavor, int src_dim, std::span<const Gen> letters) {
    require_semantic(src_dim >= 0, "negative source dimension");
    int dim = src_dim;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        const Gen& g = *it;
        switch (g.kind) {
            case GenKind::face:
                require_semantic(g.index >= 0 && g.index <= dim, "face index out of range");
                require_semantic(g.sign <= 1, "face sign out of range");
                ++dim;
                break;
            case GenKind::degen:
                require_semantic(g.index >= 0 && g.index <= dim - 1, "degeneracy index out of range");
                --dim;
                break;
            case GenKind::conn:
                require_semantic(flavor == Flavor::connections,
                                 "connection generator in a reduced word");
                require_semantic(g.index >= 0 && g.index <= dim - 2, "connection index out of range");
                --dim;
                break;
        }
    }
    return dim;
}

} // namespace

CubeWord::CubeWord(Flavor flavor, int src_dim,
                   std::vector<std::pair<int, int>> faces,
                   std::vector<int> conns,
                   std::vector<int> degens)
    : flavor_(flavor), src_dim_(src_dim),
      faces_(std::move(faces)), conns_(std::move(conns)), degens_(std::move(degens)) {
    for (std::size_t t = 0; t + 1 < faces_.size(); ++t)
        require_semantic(faces_[t].second > faces_[t + 1].second,
                         "face indices not strictly decreasing");
    for (std::size_t t = 0; t + 1 < conns_.size(); ++t)
        require_semantic(conns_[t] < conns_[t + 1], "connection indices not strictly increasing");
    for (std::size_t t = 0; t + 1 < degens_.size(); ++t)
        require_semantic(degens_[t] < degens_[t + 1], "degeneracy indices not strictly increasing");
    tgt_dim_ = check_letters(flavor_, src_dim_, letters());
}

CubeWord CubeWord::identity(Flavor f, int n) { return CubeWord(f, n, {}, {}, {}); }

std::vector<Gen> CubeWord::letters() const {
    std::vector<Gen> out;
    out.reserve(faces_.size() + conns_.size() + degens_.size());
    for (const auto& [sign, i] : faces_) out.push_back(Gen::face(sign, i));
    for (int i : conns_) out.push_back(Gen::conn(i));
    for (int i : degens_) out.push_back(Gen::degen(i));
    return out;
}

CubeFunction eval_raw(Flavor flavor, int src_dim, std::span<const Gen> letters) {
    check_letters(flavor, src_dim, letters);
    CubeFunction f = CubeFunction::identity(src_dim);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        const int dim = f.tgt_dim();
        std::vector<std::uint32_t> t(f.table());
        for (auto& v : t) v = gen_apply(*it, dim, v);
        f = CubeFunction(f.src_dim(), dim + gen_delta(*it), std::move(t));
    }
    return f;
}

CubeFunction eval(const CubeWord& w) {
    return eval_raw(w.flavor(), w.src_dim(), w.letters());
}

// ---------------------------------------------------------------------------
// Normalization by oriented rewriting
// ---------------------------------------------------------------------------

namespace {

// Applies the defining relation for an adjacent pair (a on the left of b,
// so b acts first). Returns the replacement or nothing when the pair is
// already in normal order.
std::optional<std::vector<Gen>> reduce_pair(const Gen& a, const Gen& b) {
    using K = GenKind;
    // delta^eps_i delta^eps'_j = delta^eps'_{j+1} delta^eps_i  (i <= j)
    if (a.kind == K::face && b.kind == K::face) {
        if (a.index <= b.index)
            return std::vector<Gen>{Gen::face(b.sign, b.index + 1), Gen::face(a.sign, a.index)};
        return std::nullopt;
    }
    // sigma_i sigma_j = sigma_j sigma_{i+1}  (i >= j)
    if (a.kind == K::degen && b.kind == K::degen) {
        if (a.index >= b.index)
            return std::vector<Gen>{Gen::degen(b.index), Gen::degen(a.index + 1)};
        return std::nullopt;
    }
    // sigma_i delta^eps_j
    if (a.kind == K::degen && b.kind == K::face) {
        if (a.index < b.index)
            return std::vector<Gen>{Gen::face(b.sign, b.index - 1), Gen::degen(a.index)};
        if (a.index == b.index) return std::vector<Gen>{};
        return std::vector<Gen>{Gen::face(b.sign, b.index), Gen::degen(a.index - 1)};
    }
    // gamma_i gamma_j = gamma_j gamma_{i+1}  (i >= j)
    if (a.kind == K::conn && b.kind == K::conn) {
        if (a.index >= b.index)
            return std::vector<Gen>{Gen::conn(b.index), Gen::conn(a.index + 1)};
        return std::nullopt;
    }
    // sigma_i gamma_j
    if (a.kind == K::degen && b.kind == K::conn) {
        if (a.index == b.index)
            return std::vector<Gen>{Gen::degen(a.index), Gen::degen(a.index)};
        if (a.index < b.index)
            return std::vector<Gen>{Gen::conn(b.index - 1), Gen::degen(a.index)};
        return std::vector<Gen>{Gen::conn(b.index), Gen::degen(a.index + 1)};
    }
    // gamma_i delta^eps_j
    if (a.kind == K::conn && b.kind == K::face) {
        if (b.index == a.index || b.index == a.index + 1) {
            if (b.sign == 0) return std::vector<Gen>{};
            return std::vector<Gen>{Gen::face(1, a.index), Gen::degen(a.index)};
        }
        if (b.index > a.index + 1)
            return std::vector<Gen>{Gen::face(b.sign, b.index - 1), Gen::conn(a.index)};
        return std::vector<Gen>{Gen::face(b.sign, b.index), Gen::conn(a.index - 1)};
    }
    return std::nullopt;
}

CubeWord from_normal_letters(Flavor flavor, int src_dim, const std::vector<Gen>& w) {
    std::vector<std::pair<int, int>> faces;
    std::vector<int> conns, degens;
    for (const Gen& g : w) {
        switch (g.kind) {
            case GenKind::face: faces.emplace_back(g.sign, g.index); break;
            case GenKind::conn: conns.push_back(g.index); break;
            case GenKind::degen: degens.push_back(g.index); break;
        }
    }
    return CubeWord(flavor, src_dim, std::move(faces), std::move(conns), std::move(degens));
}

} // namespace

CubeWord normalize_raw(Flavor flavor, int src_dim, std::vector<Gen> letters) {
    check_letters(flavor, src_dim, letters);
    std::uint64_t fuel = 1'000'000 + 64 * std::uint64_t(letters.size()) * (letters.size() + 1);
    std::size_t i = 0;
    while (i + 1 <= letters.size() && !letters.empty()) {
        if (i + 1 == letters.size()) break;
        auto repl = reduce_pair(letters[i], letters[i + 1]);
        if (!repl) {
            ++i;
            continue;
        }
        if (fuel-- == 0) {
            // The rewrite is expected to terminate; refactorising the
            // evaluated function gives the same normal form either way.
            auto w = factorize(eval_raw(flavor, src_dim, letters), flavor);
            require_semantic(w.has_value(), "semantic normalization fallback failed");
            return *w;
        }
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i),
                      letters.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(i),
                       repl->begin(), repl->end());
        if (i > 0) --i;
    }
    return from_normal_letters(flavor, src_dim, letters);
}

CubeWord compose(const CubeWord& g, const CubeWord& f) {
    require_semantic(g.flavor() == f.flavor(), "flavor mismatch in composition");
    require_semantic(f.tgt_dim() == g.src_dim(), "dimension mismatch in composition");
    std::vector<Gen> letters = g.letters();
    const std::vector<Gen> tail = f.letters();
    letters.insert(letters.end(), tail.begin(), tail.end());
    return normalize_raw(f.flavor(), f.src_dim(), std::move(letters));
}

CubeWord tensor_word(const CubeWord& f, const CubeWord& g) {
    require_semantic(g.flavor() == f.flavor(), "flavor mismatch in tensor");
    // f (x) g = (f (x) id) o (id (x) g); the right factor's letters act at
    // offset f.src_dim, the left factor's letters are unchanged.
    std::vector<Gen> letters = f.letters();
    for (Gen h : g.letters()) {
        h.index += f.src_dim();
        letters.push_back(h);
    }
    return normalize_raw(f.flavor(), f.src_dim() + g.src_dim(), std::move(letters));
}

// ---------------------------------------------------------------------------
// Enumeration of normal forms
// ---------------------------------------------------------------------------

namespace {

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int t = 0; t < k; ++t) r = r * std::uint64_t(n - t) / std::uint64_t(t + 1);
    return r;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) pick[static_cast<std::size_t>(t)] = t;
    if (k > n) return;
    while (true) {
        fn(pick);
        int t = k - 1;
        while (t >= 0 && pick[static_cast<std::size_t>(t)] == n - k + t) --t;
        if (t < 0) break;
        ++pick[static_cast<std::size_t>(t)];
        for (int u = t + 1; u < k; ++u)
            pick[static_cast<std::size_t>(u)] = pick[static_cast<std::size_t>(u - 1)] + 1;
    }
}

struct HomShape {
    int c, b, a;
};

std::vector<HomShape> hom_shapes(Flavor flavor, int m, int n) {
    std::vector<HomShape> out;
    for (int c = 0; c <= m; ++c) {
        const int mp = m - c;
        const int bmax = (flavor == Flavor::connections && mp >= 2) ? mp - 1 : 0;
        for (int b = 0; b <= bmax; ++b) {
            const int a = n - (mp - b);
            if (a < 0 || a > n) continue;
            out.push_back({c, b, a});
        }
    }
    return out;
}

} // namespace

std::uint64_t hom_count(Flavor flavor, int m, int n) {
    std::uint64_t total = 0;
    for (const auto& s : hom_shapes(flavor, m, n)) {
        const int mp = m - s.c;
        total += binom(m, s.c) * binom(std::max(mp - 1, 0), s.b) * binom(n, s.a)
                 * (std::uint64_t(1) << s.a);
    }
    return total;
}

std::vector<CubeWord> enumerate_homs(Flavor flavor, int m, int n) {
    if (m > limits().max_cube_dim || n > limits().max_cube_dim)
        fail_guard("enumerate_homs: dimension exceeds guard");
    if (hom_count(flavor, m, n) > limits().max_candidates)
        fail_guard("enumerate_homs: candidate count exceeds guard");
    std::vector<CubeWord> out;
    for (const auto& s : hom_shapes(flavor, m, n)) {
        const int mp = m - s.c;
        for_each_subset(m, s.c, [&](const std::vector<int>& degens) {
            for_each_subset(std::max(mp - 1, 0), s.b, [&](const std::vector<int>& conns) {
                for_each_subset(n, s.a, [&](const std::vector<int>& positions) {
                    for (std::uint32_t signs = 0; signs < (1u << s.a); ++signs) {
                        std::vector<std::pair<int, int>> faces(static_cast<std::size_t>(s.a));
                        for (int t = 0; t < s.a; ++t) {
                            // positions ascending; faces want strictly decreasing
                            const int idx = positions[static_cast<std::size_t>(s.a - 1 - t)];
                            faces[static_cast<std::size_t>(t)] = {int((signs >> t) & 1u), idx};
                        }
                        out.emplace_back(flavor, m, std::move(faces), conns, degens);
                    }
                });
            });
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Factorization of set maps
// ---------------------------------------------------------------------------

std::optional<CubeWord> factorize(const CubeFunction& f, Flavor flavor) {
    const int m = f.src_dim();
    const int n = f.tgt_dim();
    if (m > limits().max_cube_dim || n > limits().max_cube_dim)
        fail_guard("factorize: dimension exceeds guard");

    // Constant target coordinates are exactly the inserted faces.
    std::vector<int> constant(static_cast<std::size_t>(n), -1);
    for (int q = 0; q < n; ++q) {
        bool seen0 = false, seen1 = false;
        for (std::uint32_t v = 0; v < f.size(); ++v)
            (vertex_coord(f.apply(v), n, q) ? seen1 : seen0) = true;
        if (seen0 && !seen1) constant[static_cast<std::size_t>(q)] = 0;
        if (seen1 && !seen0) constant[static_cast<std::size_t>(q)] = 1;
    }
    std::vector<std::pair<int, int>> faces;
    std::vector<int> varying;
    for (int q = n - 1; q >= 0; --q)
        if (constant[static_cast<std::size_t>(q)] >= 0)
            faces.emplace_back(constant[static_cast<std::size_t>(q)], q);
    for (int q = 0; q < n; ++q)
        if (constant[static_cast<std::size_t>(q)] < 0) varying.push_back(q);

    // Each remaining coordinate must be the max over a set of inputs; the
    // sets must be nonempty, disjoint and ordered blockwise.
    std::vector<std::vector<int>> support(varying.size());
    for (std::size_t t = 0; t < varying.size(); ++t) {
        const int q = varying[t];
        for (int p = 0; p < m; ++p) {
            bool depends = false;
            for (std::uint32_t v = 0; v < f.size() && !depends; ++v) {
                const std::uint32_t w = v ^ (1u << (m - 1 - p));
                if (vertex_coord(f.apply(v), n, q) != vertex_coord(f.apply(w), n, q))
                    depends = true;
            }
            if (depends) support[t].push_back(p);
        }
        if (support[t].empty()) return std::nullopt;
        if (flavor == Flavor::reduced && support[t].size() > 1) return std::nullopt;
    }
    std::vector<int> used(static_cast<std::size_t>(m), 0);
    for (const auto& s : support)
        for (int p : s) {
            if (used[static_cast<std::size_t>(p)]) return std::nullopt;
            used[static_cast<std::size_t>(p)] = 1;
        }
    std::vector<int> degens, survivors;
    for (int p = 0; p < m; ++p)
        (used[static_cast<std::size_t>(p)] ? survivors : degens).push_back(p);

    // Supports must be consecutive blocks of survivors, in order.
    std::vector<int> pos_of(static_cast<std::size_t>(m), -1);
    for (std::size_t t = 0; t < survivors.size(); ++t)
        pos_of[static_cast<std::size_t>(survivors[t])] = static_cast<int>(t);
    std::vector<int> conns;
    int next = 0;
    for (const auto& s : support) {
        for (std::size_t u = 0; u < s.size(); ++u) {
            if (pos_of[static_cast<std::size_t>(s[u])] != next) return std::nullopt;
            if (u + 1 < s.size()) conns.push_back(next);
            ++next;
        }
    }
    if (next != static_cast<int>(survivors.size())) return std::nullopt;

    CubeWord w(flavor, m, std::move(faces), std::move(conns), std::move(degens));
    if (!(eval(w) == f)) return std::nullopt;
    return w;
}

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

CubeWord parse_word(Flavor flavor, std::string_view text, int src_dim) {
    std::vector<Gen> letters;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_ws();
    bool expect_token = true;
    while (pos < text.size()) {
        if (!expect_token) {
            if (text[pos] != '.') fail_parse("expected '.' between word tokens");
            ++pos;
            skip_ws();
            expect_token = true;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '.')
            ++end;
        std::string_view tok = text.substr(pos, end - pos);
        pos = end;
        skip_ws();
        expect_token = false;
        if (tok == "id") continue;
        std::size_t at = tok.find('@');
        if (at == std::string_view::npos) fail_parse("word token missing '@': " + std::string(tok));
        std::string_view head = tok.substr(0, at);
        int index = 0;
        try {
            std::size_t used = 0;
            index = std::stoi(std::string(tok.substr(at + 1)), &used);
            if (used != tok.size() - at - 1) fail_parse("bad index in token " + std::string(tok));
        } catch (const Error&) {
            throw;
        } catch (...) {
            fail_parse("bad index in token " + std::string(tok));
        }
        if (index < 0) fail_parse("negative index in token " + std::string(tok));
        if (head == "d0") letters.push_back(Gen::face(0, index));
        else if (head == "d1") letters.push_back(Gen::face(1, index));
        else if (head == "s") letters.push_back(Gen::degen(index));
        else if (head == "g") letters.push_back(Gen::conn(index));
        else fail_parse("unknown generator token " + std::string(tok));
    }
    if (expect_token && !letters.empty()) fail_parse("dangling '.' in word");

    if (src_dim < 0) {
        // Smallest source dimension making every letter valid.
        int need = 0, off = 0;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            switch (it->kind) {
                case GenKind::face: need = std::max(need, it->index - off); ++off; break;
                case GenKind::degen: need = std::max(need, it->index + 1 - off); --off; break;
                case GenKind::conn: need = std::max(need, it->index + 2 - off); --off; break;
            }
            need = std::max(need, -off);
        }
        src_dim = need;
    }
    return normalize_raw(flavor, src_dim, std::move(letters));
}

std::string to_string(const CubeWord& w) {
    const auto letters = w.letters();
    if (letters.empty()) return "id";
    std::string out;
    for (std::size_t t = 0; t < letters.size(); ++t) {
        if (t) out += " . ";
        const Gen& g = letters[t];
        switch (g.kind) {
            case GenKind::face: out += g.sign ? "d1@" : "d0@"; break;
            case GenKind::degen: out += "s@"; break;
            case GenKind::conn: out += "g@"; break;
        }
        out += std::to_string(g.index);
    }
    return out;
}

std::string table_to_string(const CubeFunction& f) {
    std::ostringstream os;
    for (std::uint32_t v = 0; v < f.size(); ++v) {
        if (v) os << '\n';
        os << vertex_to_string(v, f.src_dim()) << " -> "
           << vertex_to_string(f.apply(v), f.tgt_dim());
    }
    return os.str();
}

} // namespace cubix
