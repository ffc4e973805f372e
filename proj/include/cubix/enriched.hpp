#pragma once

// Categories enriched in cubical sets: quivers, the free category, discrete
// enrichment and the underlying category, the cosimplicial categories W_n
// driving the homotopy coherent nerve, functor enumeration, and the nerve
// itself (including the dg variant over prime fields).

#include <functional>
#include <memory>

#include "cubix/chain.hpp"
#include "cubix/cubical.hpp"
#include "cubix/simplicial.hpp"

namespace cubix {

struct CubicalQuiver {
    Flavor flavor = Flavor::connections;
    int trunc = 0;
    std::vector<std::string> objects;
    std::vector<std::vector<PshPtr>> hom; // hom[x][y]

    void validate() const;
};

class CubicalCategory;
using CatPtr = std::shared_ptr<const CubicalCategory>;

class CubicalCategory {
public:
    /// The rule evaluates the composition on a Day-tensor class.
    using CompRule = std::function<int(int x, int y, int z, const DayTensor& day, int dim, int cls)>;

    CubicalCategory(CubicalQuiver quiver, std::vector<int> units, const CompRule& rule);

    Flavor flavor() const { return quiver_.flavor; }
    int trunc() const { return quiver_.trunc; }
    int objects() const { return static_cast<int>(quiver_.objects.size()); }
    const std::string& object_name(int x) const { return quiver_.objects[x]; }
    const PshPtr& hom(int x, int y) const { return quiver_.hom[x][y]; }
    int unit_cell(int x) const { return units_[x]; }
    const DayTensor& day(int x, int y, int z) const { return *days_[x][y][z]; }
    const PresheafMap& comp(int x, int y, int z) const { return comps_[x][y][z]; }

    /// m applied to the pure tensor of two cells.
    int compose_cells(int x, int y, int z, int dim_a, int a, int dim_b, int b) const;
    /// The fully degenerate cell over the unit at dimension dim.
    int degenerate_unit(int x, int dim) const;

    /// Unit laws and associativity, checked cellwise on flat triples.
    void validate() const;

private:
    CubicalQuiver quiver_;
    std::vector<int> units_;
    std::vector<std::vector<std::vector<std::unique_ptr<DayTensor>>>> days_;
    std::vector<std::vector<std::vector<PresheafMap>>> comps_;
};

struct CubicalFunctor {
    CatPtr src, tgt;
    std::vector<int> object_map;
    std::vector<std::vector<PresheafMap>> hom_maps; // [x][y]

    void validate() const;
};

CubicalFunctor functor_compose(const CubicalFunctor& g, const CubicalFunctor& f);
bool functors_equal(const CubicalFunctor& a, const CubicalFunctor& b);

/// The one-object category on the monoidal unit.
CatPtr point_category(Flavor f, int trunc);
/// Two objects 0, 1 with hom(0,1) = X and composition forced by the units.
CatPtr arrow_category(const PshPtr& x);

/// Free category on a quiver: homs are coproducts over paths of iterated Day
/// tensors; composition concatenates. Rejects quivers whose path count
/// exceeds the bound (cycles).
CatPtr free_category(const CubicalQuiver& q, int path_bound);

CatPtr discrete_enrich(const FinCategory& c, Flavor flavor, int trunc);
FinCategory underlying(const CubicalCategory& c);

/// The cosimplicial cubical category W_n: objects 0..n,
/// hom(i,j) = box_c[j-i-1], composition by the delta^1 face.
CatPtr W(int n, int trunc);
CubicalFunctor W_coface(int i, int n, int trunc);       // W_n -> W_{n+1}
CubicalFunctor W_codegeneracy(int i, int n, int trunc); // W_n -> W_{n-1}

std::vector<CubicalFunctor> enumerate_functors(const CatPtr& a, const CatPtr& b);

/// Homotopy coherent nerve, as a truncated simplicial set: a k-simplex is an
/// object chain with cells c_ij in hom(g_i, g_j)(j-i-1) such that the
/// delta^1 face of c_ik is the composite of c_ij and c_jk.
PshPtr hc_nerve(const CatPtr& c, int k_max);

/// A finite dg category over a prime field, with explicit composition
/// matrices on the binary tensor bases.
struct DgCategory {
    Ring ring;
    std::vector<std::string> objects;
    std::vector<std::vector<ChPtr>> hom;
    std::vector<std::vector<std::vector<ChainMap>>> comp; // tensor(hom[x][y], hom[y][z]) -> hom[x][z]
    std::vector<std::vector<long long>> unit;             // id_x coefficients in hom[x][x]_0

    void validate() const;
    /// The walking arrow over F_p: two objects, one nonzero map in degree 0.
    static DgCategory arrow(int p);
    /// One object with endomorphisms K in degree 0.
    static DgCategory trivial(int p);
};

/// Change of enrichment along dg-singular, hom by hom.
CatPtr dg_to_cubical(const DgCategory& d, int trunc);
PshPtr dg_category_nerve(const DgCategory& d, int k_max);

} // namespace cubix
