#pragma once

// Finite simplicial sets, nerves of finite categories, and the triangulation
// adjunction against cubical sets: the realization sends box[n] to the nerve
// of the vertex poset {0<1}^n, and the right adjoint takes a simplicial set
// Y to n -> hom(nerve({0<1}^n), Y).

#include <cstdint>
#include <span>

#include "cubix/cubical.hpp"
#include "cubix/presheaf.hpp"

namespace cubix {

const Site& simplicial_site();
bool is_simplicial(const Presheaf& x);

/// Memoized standard simplex; cells of dimension k are the monotone
/// (k+1)-tuples in {0..n}, labeled "v0.v1...".
PshPtr simplex(int n, int trunc);
SubobjectResult simplicial_boundary(int n, int trunc);
SubobjectResult simplicial_horn(int n, int k, int trunc);

/// Levelwise product of simplicial sets.
PshPtr sset_product(const PshPtr& x, const PshPtr& y);

/// A finite category given by explicit tables. `then(f, g)` composes
/// diagrammatically: f : x -> y followed by g : y -> z.
struct FinCategory {
    std::vector<std::string> object_names;
    std::vector<int> mor_src, mor_tgt;
    std::vector<std::string> mor_names;
    std::vector<int> identity;                // object -> morphism id
    std::vector<std::vector<int>> then_table; // -1 when not composable

    int objects() const { return static_cast<int>(object_names.size()); }
    int morphisms() const { return static_cast<int>(mor_src.size()); }
    int then(int f, int g) const { return then_table[f][g]; }
    void validate() const;

    static FinCategory chain(int n);      // the poset [n]
    static FinCategory square();          // the free commutative square {0<1}^2
    static FinCategory cube_poset(int n); // the poset {0<1}^n
};

/// Nerve: k-cells are composable k-chains of morphisms.
PshPtr nerve_of_category(const FinCategory& c, int trunc);

/// Memoized nerve of the poset {0<1}^n with cells indexed by monotone vertex
/// chains (packed cube vertices), the cocubical object of the triangulation.
PshPtr cube_nerve(int n, int trunc);
int cube_nerve_cell(int n, int trunc, int k, std::span<const std::uint32_t> chain);
/// The simplicial map cube_nerve(a) -> cube_nerve(b) induced by a cube word.
PresheafMap cube_nerve_map(const CubeWord& w, int trunc);

/// Realization of a cubical set, computed as the coend against cube_nerve.
class Triangulation {
public:
    explicit Triangulation(PshPtr cubical);

    const PshPtr& object() const { return object_; }
    const PshPtr& source() const { return source_; }

    struct Pair {
        int p, x;
        std::vector<std::uint32_t> chain;
    };
    const Pair& rep(int k, int cell) const { return reps_[k][cell]; }
    int class_of(int k, int p, int x, std::span<const std::uint32_t> chain) const;

private:
    PshPtr source_;
    PshPtr object_;
    std::vector<std::vector<Pair>> reps_;
    std::vector<std::vector<int>> class_of_pair_; // per k, by flat pair index
    std::uint64_t pair_index(int k, int p, int x, std::span<const std::uint32_t> chain) const;
};

/// Naturality: the simplicial map L(f) of a cubical map f.
PresheafMap triangulate_map(const Triangulation& src, const Triangulation& tgt,
                            const PresheafMap& f);

/// Right adjoint: R(Y)(n) = hom(cube_nerve(n), Y) with actions by
/// precomposition. Cell i of dimension n is the i-th map in the sorted
/// enumeration.
PshPtr cubical_singular(const PshPtr& y, Flavor flavor, int trunc);

struct HornFillReport {
    std::uint64_t total = 0;
    std::uint64_t unfillable = 0;
};
HornFillReport inner_horn_fill_probe(const PshPtr& x, int n, int k);

} // namespace cubix
