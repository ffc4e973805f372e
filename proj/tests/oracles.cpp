#include "oracles.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

std::vector<std::vector<int>> all_vertices(int dim) {
    std::vector<std::vector<int>> out;
    out.reserve(std::size_t(1) << dim);
    for (std::uint32_t v = 0; v < (std::uint32_t(1) << dim); ++v) {
        std::vector<int> x(static_cast<std::size_t>(dim));
        for (int p = 0; p < dim; ++p)
            x[static_cast<std::size_t>(p)] = int((v >> (dim - 1 - p)) & 1u);
        out.push_back(std::move(x));
    }
    return out;
}

std::size_t lex_index(const std::vector<int>& x) {
    std::size_t idx = 0;
    for (int b : x) idx = idx * 2 + static_cast<std::size_t>(b);
    return idx;
}

} // namespace

FnTable identity_fn(int n) {
    FnTable f{n, n, all_vertices(n)};
    return f;
}

FnTable face_fn(int sign, int i, int at_dim) {
    FnTable f{at_dim, at_dim + 1, {}};
    for (auto x : all_vertices(at_dim)) {
        x.insert(x.begin() + i, sign);
        f.table.push_back(std::move(x));
    }
    return f;
}

FnTable degen_fn(int i, int at_dim) {
    FnTable f{at_dim, at_dim - 1, {}};
    for (auto x : all_vertices(at_dim)) {
        x.erase(x.begin() + i);
        f.table.push_back(std::move(x));
    }
    return f;
}

FnTable conn_fn(int i, int at_dim) {
    FnTable f{at_dim, at_dim - 1, {}};
    for (auto x : all_vertices(at_dim)) {
        const int m = std::max(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i) + 1]);
        x.erase(x.begin() + i);
        x[static_cast<std::size_t>(i)] = m;
        f.table.push_back(std::move(x));
    }
    return f;
}

FnTable compose_fn(const FnTable& g, const FnTable& f) {
    if (f.n != g.m) throw std::logic_error("oracle compose: dimension mismatch");
    FnTable h{f.m, g.n, {}};
    for (std::size_t v = 0; v < f.table.size(); ++v)
        h.table.push_back(g.table[lex_index(f.table[v])]);
    return h;
}

FnTable product_fn(const FnTable& f, const FnTable& g) {
    FnTable h{f.m + g.m, f.n + g.n, {}};
    for (const auto& x : all_vertices(f.m + g.m)) {
        std::vector<int> xl(x.begin(), x.begin() + f.m);
        std::vector<int> xr(x.begin() + f.m, x.end());
        std::vector<int> y = f.table[lex_index(xl)];
        const auto& yr = g.table[lex_index(xr)];
        y.insert(y.end(), yr.begin(), yr.end());
        h.table.push_back(std::move(y));
    }
    return h;
}

std::map<std::pair<int, int>, std::set<FnTable>> closure(cubix::Flavor flavor, int max_dim) {
    std::map<std::pair<int, int>, std::set<FnTable>> homs;
    std::vector<FnTable> frontier;
    for (int n = 0; n <= max_dim; ++n) {
        FnTable id = identity_fn(n);
        homs[{n, n}].insert(id);
        frontier.push_back(id);
    }
    while (!frontier.empty()) {
        std::vector<FnTable> next;
        for (const FnTable& f : frontier) {
            std::vector<FnTable> gens;
            if (f.n + 1 <= max_dim)
                for (int i = 0; i <= f.n; ++i)
                    for (int sign = 0; sign <= 1; ++sign) gens.push_back(face_fn(sign, i, f.n));
            if (f.n >= 1)
                for (int i = 0; i < f.n; ++i) gens.push_back(degen_fn(i, f.n));
            if (flavor == cubix::Flavor::connections && f.n >= 2)
                for (int i = 0; i + 1 < f.n; ++i) gens.push_back(conn_fn(i, f.n));
            for (const FnTable& g : gens) {
                FnTable h = compose_fn(g, f);
                if (homs[{h.m, h.n}].insert(h).second) next.push_back(h);
            }
        }
        frontier = std::move(next);
    }
    return homs;
}

FnTable from_cubix(const cubix::CubeFunction& f) {
    FnTable out{f.src_dim(), f.tgt_dim(), {}};
    for (std::uint32_t v = 0; v < f.size(); ++v) {
        std::vector<int> y(static_cast<std::size_t>(f.tgt_dim()));
        for (int q = 0; q < f.tgt_dim(); ++q)
            y[static_cast<std::size_t>(q)] = cubix::vertex_coord(f.apply(v), f.tgt_dim(), q);
        out.table.push_back(std::move(y));
    }
    return out;
}

std::vector<RelationCase> relation_cases(int top) {
    using cubix::Gen;
    std::vector<RelationCase> out;
    auto add = [&](int src, std::vector<Gen> l, std::vector<Gen> r, bool conn) {
        out.push_back({src, std::move(l), std::move(r), conn});
    };
    for (int n = 0; n <= top - 2; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (int e = 0; e <= 1; ++e)
                    for (int e2 = 0; e2 <= 1; ++e2)
                        add(n, {Gen::face(e, i), Gen::face(e2, j)},
                            {Gen::face(e2, j + 1), Gen::face(e, i)}, false);
    for (int n = 2; n <= top; ++n)
        for (int j = 0; j <= n - 1; ++j)
            for (int i = j; i <= n - 2; ++i)
                add(n, {Gen::degen(i), Gen::degen(j)}, {Gen::degen(j), Gen::degen(i + 1)}, false);
    for (int n = 0; n <= top - 1; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                for (int e = 0; e <= 1; ++e) {
                    if (i < j)
                        add(n, {Gen::degen(i), Gen::face(e, j)},
                            {Gen::face(e, j - 1), Gen::degen(i)}, false);
                    else if (i == j)
                        add(n, {Gen::degen(i), Gen::face(e, j)}, {}, false);
                    else
                        add(n, {Gen::degen(i), Gen::face(e, j)},
                            {Gen::face(e, j), Gen::degen(i - 1)}, false);
                }
    for (int n = 3; n <= top; ++n)
        for (int j = 0; j <= n - 2; ++j)
            for (int i = j; i <= n - 3; ++i)
                add(n, {Gen::conn(i), Gen::conn(j)}, {Gen::conn(j), Gen::conn(i + 1)}, true);
    for (int n = 2; n <= top; ++n)
        for (int j = 0; j <= n - 2; ++j)
            for (int i = 0; i <= n - 2; ++i) {
                if (i < j)
                    add(n, {Gen::degen(i), Gen::conn(j)}, {Gen::conn(j - 1), Gen::degen(i)}, true);
                else if (i == j)
                    add(n, {Gen::degen(i), Gen::conn(j)}, {Gen::degen(i), Gen::degen(i)}, true);
                else
                    add(n, {Gen::degen(i), Gen::conn(j)}, {Gen::conn(j), Gen::degen(i + 1)}, true);
            }
    for (int n = 1; n <= top - 1; ++n)
        for (int i = 0; i <= n - 1; ++i)
            for (int j = 0; j <= n; ++j)
                for (int e = 0; e <= 1; ++e) {
                    if (j == i || j == i + 1) {
                        if (e == 0)
                            add(n, {Gen::conn(i), Gen::face(0, j)}, {}, true);
                        else
                            add(n, {Gen::conn(i), Gen::face(1, j)},
                                {Gen::face(1, i), Gen::degen(i)}, true);
                    } else if (j > i + 1) {
                        add(n, {Gen::conn(i), Gen::face(e, j)},
                            {Gen::face(e, j - 1), Gen::conn(i)}, true);
                    } else {
                        add(n, {Gen::conn(i), Gen::face(e, j)},
                            {Gen::face(e, j), Gen::conn(i - 1)}, true);
                    }
                }
    return out;
}

int rank_over_Q(IntMatrix m) {
    // Bareiss fraction-free elimination.
    int rank = 0;
    long long prev = 1;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        for (int r = rank + 1; r < m.rows; ++r) {
            for (int c = col + 1; c < m.cols; ++c)
                m.at(r, c) = (m.at(rank, col) * m.at(r, c) - m.at(r, col) * m.at(rank, c)) / prev;
            m.at(r, col) = 0;
        }
        prev = m.at(rank, col);
        ++rank;
    }
    return rank;
}

} // namespace oracle
