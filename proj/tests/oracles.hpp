#pragma once

// Brute-force semantic oracles used by the test suites. Everything here is
// computed from first principles on explicit vertex tuples, independently of
// the word/normal-form machinery under test.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "cubix/cube.hpp"

namespace oracle {

// A function {0,1}^m -> {0,1}^n on explicit tuples; table indexed in
// lexicographic order of the source tuple.
struct FnTable {
    int m = 0, n = 0;
    std::vector<std::vector<int>> table;

    auto operator<=>(const FnTable&) const = default;
};

FnTable identity_fn(int n);
FnTable face_fn(int sign, int i, int at_dim);   // {0,1}^at_dim -> {0,1}^{at_dim+1}
FnTable degen_fn(int i, int at_dim);            // drop coordinate i
FnTable conn_fn(int i, int at_dim);             // merge i, i+1 by max
FnTable compose_fn(const FnTable& g, const FnTable& f);
FnTable product_fn(const FnTable& f, const FnTable& g);

// All morphisms box^m -> box^n for m, n <= max_dim, computed as the closure
// of the generators under composition (kept inside dimensions <= max_dim,
// which is complete for hom-sets between dimensions <= max_dim).
std::map<std::pair<int, int>, std::set<FnTable>> closure(cubix::Flavor flavor, int max_dim);

// Conversion for comparisons with the implementation under test.
FnTable from_cubix(const cubix::CubeFunction& f);

// Every instance of the defining relations (as generator-word pairs over a
// common source dimension) with ambient dimensions bounded by `top`.
struct RelationCase {
    int src_dim;
    std::vector<cubix::Gen> lhs, rhs;
    bool connections_only;
};
std::vector<RelationCase> relation_cases(int top);

// Exact Betti numbers over Q of an integer chain complex, via fraction-free
// Gaussian elimination; boundary matrices d[k] map degree k to k-1 and are
// stored row-major as (rows = dim k-1, cols = dim k).
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<long long> a;
    long long& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    long long at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};
int rank_over_Q(IntMatrix m);

} // namespace oracle
