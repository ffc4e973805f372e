#pragma once

// Cubical sets: presheaves on the cube categories. Representables carry cell
// labels equal to the normal-form word of the corresponding morphism; the
// caps use 0-based face indices (the classical 1-based (eps, i) with
// i in {1..n} corresponds to i-1 here).

#include <cstdint>

#include "cubix/cube.hpp"
#include "cubix/presheaf.hpp"

namespace cubix {

const Site& cubical_site(Flavor f);
bool is_cubical(const Presheaf& x);
Flavor cubical_flavor(const Presheaf& x);

/// Down/up action index of a generator acting on cells of dimension cell_dim.
int face_action_index(int sign, int i);
int degen_action_index(int i);
int conn_action_index(int cell_dim, int i);

/// Contravariant action of a whole word w : box^a -> box^b on a cell of
/// dimension b; returns a cell of dimension a.
int act_word(const Presheaf& x, const CubeWord& w, int cell);

PshPtr empty_presheaf(const Site* site, int trunc);

/// Memoized: repeated calls return the same object, so maps built against it
/// compose without copies.
PshPtr cubical_representable(Flavor f, int n, int trunc);

/// Yoneda image of a word u : box^a -> box^b, as a map of representables
/// (w maps to u o w).
PresheafMap representable_map(const CubeWord& u, int trunc);

SubobjectResult cubical_boundary(Flavor f, int n, int trunc);
SubobjectResult cubical_cap(Flavor f, int n, int eps, int i, int trunc);

/// Day tensor product, computed as the union-find quotient of triples
/// (x in X(p), y in Y(q), w : box^n -> box^{p+q}) with p, q bounded by the
/// skeleta, modulo (x.f, y.g, w) ~ (x, y, (f (x) g) o w).
class DayTensor {
public:
    struct Triple {
        int p, x, q, y;
        CubeWord w;
    };

    DayTensor(PshPtr left, PshPtr right);

    const PshPtr& object() const { return object_; }
    const PshPtr& left() const { return left_; }
    const PshPtr& right() const { return right_; }
    const Triple& rep(int dim, int cell) const { return reps_[dim][cell]; }

    /// Class of an arbitrary admissible triple (throws if out of bounds).
    int class_of(int dim, int p, int x, int q, int y, const CubeWord& w) const;
    /// Class of a pure tensor cell (w = identity).
    int pure(int dim_x, int x, int dim_y, int y) const;

private:
    PshPtr left_, right_;
    PshPtr object_;
    std::vector<std::vector<Triple>> reps_;
    std::vector<std::vector<int>> class_of_triple_; // per dim, by flat triple index
    std::vector<std::vector<std::vector<std::uint64_t>>> base_; // dim -> p -> q -> offset
    std::uint64_t triple_index(int dim, int p, int x, int q, int y, int widx) const;
};

/// The induced map day(X,Y) -> day(X',Y') of f : X->X', g : Y->Y'.
PresheafMap day_tensor_map(const DayTensor& src, const DayTensor& tgt, const PresheafMap& f,
                           const PresheafMap& g);

struct FillReport {
    std::uint64_t total = 0;
    std::uint64_t unfillable = 0;
};

/// For every map cap -> X, decide extension along the cap inclusion.
FillReport cap_fill_check(const PshPtr& x, int n, int eps, int i);

/// Shared (memoized) hom tables for representables and the Day tensor.
struct HomTable {
    std::vector<CubeWord> words;
    int index_of(const CubeWord& w) const;
};
const HomTable& hom_table(Flavor f, int m, int n);
/// Hash-backed index of a word inside hom_table(f, w.src, w.tgt).
int hom_index(const CubeWord& w);

} // namespace cubix
