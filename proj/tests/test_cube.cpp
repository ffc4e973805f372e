#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "cubix/cube.hpp"
#include "cubix/error.hpp"
#include "oracles.hpp"

using namespace cubix;

using oracle::relation_cases;

namespace {

std::vector<Gen> all_gens_at(Flavor flavor, int dim, int top) {
    std::vector<Gen> out;
    if (dim + 1 <= top)
        for (int i = 0; i <= dim; ++i)
            for (int e = 0; e <= 1; ++e) out.push_back(Gen::face(e, i));
    for (int i = 0; i <= dim - 1; ++i) out.push_back(Gen::degen(i));
    if (flavor == Flavor::connections)
        for (int i = 0; i <= dim - 2; ++i) out.push_back(Gen::conn(i));
    return out;
}

// Random valid letter sequences for property tests.
std::vector<std::vector<Gen>> random_words(Flavor flavor, int src_dim, int length, int top,
                                           int count, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<std::vector<Gen>> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<Gen> w;
        int dim = src_dim;
        bool ok = true;
        for (int t = 0; t < length; ++t) {
            auto gens = all_gens_at(flavor, dim, top);
            if (gens.empty()) { ok = false; break; }
            Gen g = gens[rng() % gens.size()];
            dim += gen_delta(g);
            w.insert(w.begin(), g); // prepend: word grows outward
        }
        if (ok) out.push_back(std::move(w));
    }
    return out;
}

} // namespace

TEST_CASE("generator evaluation matches the defining formulas") {
    // d^0 : box^0 -> box^1 has table [0]
    CubeWord d0(Flavor::reduced, 0, {{0, 0}}, {}, {});
    CHECK(eval(d0).table() == std::vector<std::uint32_t>{0});
    CubeWord d1(Flavor::reduced, 0, {{1, 0}}, {}, {});
    CHECK(eval(d1).table() == std::vector<std::uint32_t>{1});
    // identity on box^n
    for (int n = 0; n <= 4; ++n)
        CHECK(eval(CubeWord::identity(Flavor::connections, n)) == CubeFunction::identity(n));
    // g_0 : box^2 -> box^1 is max: (00,01,10,11) -> (0,1,1,1)
    CubeWord g0(Flavor::connections, 2, {}, {0}, {});
    CHECK(eval(g0).table() == std::vector<std::uint32_t>{0, 1, 1, 1});
    // s_0 : box^1 -> box^0
    CubeWord s0(Flavor::reduced, 1, {}, {}, {0});
    CHECK(eval(s0).table() == std::vector<std::uint32_t>{0, 0});
}

TEST_CASE("relation soundness in ambient dimension <= 5, both flavors") {
    for (const auto& rc : relation_cases(5)) {
        const Flavor flavor = rc.connections_only ? Flavor::connections : Flavor::reduced;
        CubeFunction l = eval_raw(flavor, rc.src_dim, rc.lhs);
        CubeFunction r = eval_raw(flavor, rc.src_dim, rc.rhs);
        REQUIRE(l == r);
        if (!rc.connections_only) {
            CubeFunction lc = eval_raw(Flavor::connections, rc.src_dim, rc.lhs);
            CubeFunction rcf = eval_raw(Flavor::connections, rc.src_dim, rc.rhs);
            REQUIRE(lc == rcf);
        }
    }
}

TEST_CASE("normalize implements the relations: rewriting agrees with evaluation") {
    for (const auto& rc : relation_cases(4)) {
        const Flavor flavor = rc.connections_only ? Flavor::connections : Flavor::reduced;
        CubeWord l = normalize_raw(flavor, rc.src_dim, rc.lhs);
        CubeWord r = normalize_raw(flavor, rc.src_dim, rc.rhs);
        CHECK(l == r);
    }
}

TEST_CASE("composition examples") {
    // s_0 o d^0_0 = id on box^0
    CubeWord f(Flavor::reduced, 0, {{0, 0}}, {}, {});
    CubeWord g(Flavor::reduced, 1, {}, {}, {0});
    CHECK(compose(g, f) == CubeWord::identity(Flavor::reduced, 0));

    // d^0_0 o d^1_0 normalizes to d^1_1 d^0_0
    CubeWord a(Flavor::reduced, 0, {{1, 0}}, {}, {});
    CubeWord b(Flavor::reduced, 1, {{0, 0}}, {}, {});
    CubeWord expect(Flavor::reduced, 0, {{1, 1}, {0, 0}}, {}, {});
    CHECK(compose(b, a) == expect);

    // g_0 o d^0_0 = id on box^1
    CubeWord df(Flavor::connections, 1, {{0, 0}}, {}, {});
    CubeWord gamma(Flavor::connections, 2, {}, {0}, {});
    CHECK(compose(gamma, df) == CubeWord::identity(Flavor::connections, 1));

    // mismatches are rejected
    CHECK_THROWS_AS(compose(gamma, gamma), Error);
}

TEST_CASE("normalize is idempotent and eval-preserving on random words") {
    int cases = 0;
    for (int src = 0; src <= 4; ++src)
        for (int len = 1; len <= 6; ++len)
            for (Flavor flavor : {Flavor::reduced, Flavor::connections})
                for (const auto& w :
                     random_words(flavor, src, len, 4, 8, 1234u + std::uint32_t(src * 100 + len))) {
                    CubeWord nf = normalize_raw(flavor, src, w);
                    CHECK(eval(nf) == eval_raw(flavor, src, w));
                    CubeWord again = normalize_raw(flavor, src, nf.letters());
                    CHECK(nf == again);
                    ++cases;
                }
    CHECK(cases > 400);
}

TEST_CASE("rewrite confluence probe: exhaustive short words in low dimension") {
    // Every valid word of length <= 3 from sources <= 3 normalizes to a form
    // whose evaluation matches, and normal forms of equal evaluations agree.
    for (Flavor flavor : {Flavor::reduced, Flavor::connections}) {
        std::map<oracle::FnTable, CubeWord> seen;
        std::vector<std::pair<int, std::vector<Gen>>> stack;
        for (int src = 0; src <= 3; ++src) stack.push_back({src, {}});
        while (!stack.empty()) {
            auto [src, w] = stack.back();
            stack.pop_back();
            if (!w.empty()) {
                CubeWord nf = normalize_raw(flavor, src, w);
                auto key = oracle::from_cubix(eval_raw(flavor, src, w));
                CHECK(oracle::from_cubix(eval(nf)) == key);
                auto [it, inserted] = seen.emplace(key, nf);
                if (!inserted) CHECK(it->second == nf);
            }
            if (w.size() >= 3) continue;
            int dim = src;
            for (auto it = w.rbegin(); it != w.rend(); ++it) dim += gen_delta(*it);
            for (const Gen& g : all_gens_at(flavor, dim, 4)) {
                auto w2 = w;
                w2.insert(w2.begin(), g);
                stack.push_back({src, w2});
            }
        }
    }
}

TEST_CASE("tensor: strictness, units, examples") {
    CubeWord id1 = CubeWord::identity(Flavor::reduced, 1);
    CHECK(tensor_word(id1, id1) == CubeWord::identity(Flavor::reduced, 2));

    CubeWord d0(Flavor::reduced, 0, {{0, 0}}, {}, {});
    CubeWord left = tensor_word(d0, id1);   // x -> (0, x)
    CubeWord right = tensor_word(id1, d0);  // x -> (x, 0)
    CHECK(eval(left).table() == std::vector<std::uint32_t>{0b00, 0b01});
    CHECK(eval(right).table() == std::vector<std::uint32_t>{0b00, 0b10});
    CHECK(left == CubeWord(Flavor::reduced, 1, {{0, 0}}, {}, {}));
    CHECK(right == CubeWord(Flavor::reduced, 1, {{0, 1}}, {}, {}));
    // the failing symmetry square
    CHECK(!(eval(left) == eval(right)));

    // unit laws
    CubeWord id0 = CubeWord::identity(Flavor::reduced, 0);
    CHECK(tensor_word(d0, id0) == d0);
    CHECK(tensor_word(id0, d0) == d0);
}

TEST_CASE("tensor is associative and satisfies interchange (dims <= 3)") {
    for (Flavor flavor : {Flavor::reduced, Flavor::connections}) {
        auto h01 = enumerate_homs(flavor, 0, 1);
        auto h10 = enumerate_homs(flavor, 1, 0);
        auto h11 = enumerate_homs(flavor, 1, 1);
        std::vector<CubeWord> pool;
        pool.insert(pool.end(), h01.begin(), h01.end());
        pool.insert(pool.end(), h10.begin(), h10.end());
        pool.insert(pool.end(), h11.begin(), h11.end());
        for (const auto& a : pool)
            for (const auto& b : pool)
                for (const auto& c : pool) {
                    CHECK(tensor_word(tensor_word(a, b), c) == tensor_word(a, tensor_word(b, c)));
                    CHECK(eval(tensor_word(a, b)) == tensor_fn(eval(a), eval(b)));
                }
        // interchange: (g (x) g') o (f (x) f') = (g o f) (x) (g' o f')
        for (const auto& f : h01)
            for (const auto& fp : h11)
                for (const auto& g : h11)
                    for (const auto& gp : h10) {
                        CubeWord lhs = compose(tensor_word(g, gp), tensor_word(f, fp));
                        CubeWord rhs = tensor_word(compose(g, f), compose(gp, fp));
                        CHECK(lhs == rhs);
                    }
    }
}

TEST_CASE("enumeration matches the brute-force closure oracle up to dimension 3") {
    for (Flavor flavor : {Flavor::reduced, Flavor::connections}) {
        auto homs = oracle::closure(flavor, 3);
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                auto words = enumerate_homs(flavor, m, n);
                CHECK(words.size() == hom_count(flavor, m, n));
                std::set<oracle::FnTable> images;
                for (const auto& w : words) {
                    REQUIRE(w.src_dim() == m);
                    REQUIRE(w.tgt_dim() == n);
                    images.insert(oracle::from_cubix(eval(w)));
                }
                // normal forms are pairwise distinct under eval ...
                CHECK(images.size() == words.size());
                // ... and hit exactly the compositional closure
                CHECK(images == homs[{m, n}]);
            }
    }
}

TEST_CASE("hom-set cardinality spot values") {
    CHECK(enumerate_homs(Flavor::reduced, 1, 1).size() == 3);
    CHECK(enumerate_homs(Flavor::connections, 2, 1).size() == 5);
    for (int n = 0; n <= 4; ++n)
        CHECK(enumerate_homs(Flavor::reduced, 0, n).size() == (std::size_t(1) << n));
}

TEST_CASE("faithfulness: eval injective on normal forms for m, n <= 4") {
    for (Flavor flavor : {Flavor::reduced, Flavor::connections})
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
                auto words = enumerate_homs(flavor, m, n);
                std::set<std::vector<std::uint32_t>> tables;
                for (const auto& w : words) tables.insert(eval(w).table());
                CHECK(tables.size() == words.size());
            }
}

TEST_CASE("factorize recovers normal forms and rejects outsiders") {
    // identity
    auto idw = factorize(CubeFunction::identity(2), Flavor::reduced);
    REQUIRE(idw.has_value());
    CHECK(*idw == CubeWord::identity(Flavor::reduced, 2));

    // swap is not in either flavor
    CubeFunction swap(2, 2, {0b00, 0b10, 0b01, 0b11});
    CHECK(!factorize(swap, Flavor::reduced).has_value());
    CHECK(!factorize(swap, Flavor::connections).has_value());

    // max lies only in the connections flavor
    CubeFunction mx(2, 1, {0, 1, 1, 1});
    CHECK(!factorize(mx, Flavor::reduced).has_value());
    auto w = factorize(mx, Flavor::connections);
    REQUIRE(w.has_value());
    CHECK(*w == CubeWord(Flavor::connections, 2, {}, {0}, {}));

    // round trip over full hom-sets
    for (Flavor flavor : {Flavor::reduced, Flavor::connections})
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (const auto& word : enumerate_homs(flavor, m, n)) {
                    auto back = factorize(eval(word), flavor);
                    REQUIRE(back.has_value());
                    CHECK(*back == word);
                }

    // min-connection is rejected (the flavor has max-connections only)
    CubeFunction mn(2, 1, {0, 0, 0, 1});
    CHECK(!factorize(mn, Flavor::connections).has_value());
}

TEST_CASE("word parsing and printing") {
    CubeWord w = parse_word(Flavor::connections, "g@0 . d0@0");
    CHECK(w == CubeWord::identity(Flavor::connections, 1));
    CHECK(to_string(w) == "id");

    CubeWord v = parse_word(Flavor::reduced, "d1@1 . d0@0");
    CHECK(v.src_dim() == 0);
    CHECK(v.tgt_dim() == 2);
    CHECK(to_string(v) == "d1@1 . d0@0");
    CHECK(parse_word(Flavor::reduced, to_string(v)) == v);

    CHECK(parse_word(Flavor::reduced, "id", 3) == CubeWord::identity(Flavor::reduced, 3));
    CHECK(parse_word(Flavor::reduced, "", 2) == CubeWord::identity(Flavor::reduced, 2));

    // explicit source dimension shifts the reading
    CubeWord deep = parse_word(Flavor::reduced, "d0@0", 2);
    CHECK(deep.src_dim() == 2);
    CHECK(deep.tgt_dim() == 3);

    CHECK_THROWS_AS(parse_word(Flavor::reduced, "q@1"), Error);
    CHECK_THROWS_AS(parse_word(Flavor::reduced, "g@0"), Error); // connection in reduced
    CHECK_THROWS_AS(parse_word(Flavor::reduced, "d0@5", 1), Error);
}

TEST_CASE("malformed words are rejected with structured errors") {
    CHECK_THROWS_AS(CubeWord(Flavor::reduced, 1, {}, {0}, {}), Error);       // conn in reduced
    CHECK_THROWS_AS(CubeWord(Flavor::reduced, 1, {}, {}, {1}), Error);       // degen out of range
    CHECK_THROWS_AS(CubeWord(Flavor::reduced, 0, {{0, 1}}, {}, {}), Error);  // face out of range
    CHECK_THROWS_AS(CubeWord(Flavor::connections, 1, {}, {0}, {}), Error);   // conn needs dim 2
    try {
        CubeWord(Flavor::reduced, 0, {{0, 1}}, {}, {});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::semantic);
    }
}

TEST_CASE("enumeration guards trip on oversized requests") {
    CHECK_THROWS_AS(enumerate_homs(Flavor::connections, 7, 7), Error);
    try {
        enumerate_homs(Flavor::connections, 7, 7);
    } catch (const Error& e) {
        CHECK(e.code() == errc::guard);
    }
}
