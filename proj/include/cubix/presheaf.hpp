#pragma once

// Finite truncated presheaves on a graded site (the cube categories and the
// simplex category both fit). A presheaf stores its cells per dimension plus
// the action tables of the generating site morphisms: "down" actions
// X(n) -> X(n-1) induced by cofaces and "up" actions X(n) -> X(n+1) induced
// by codegeneracies (and connections). Everything is immutable after
// construction and validated against the site's defining relations.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubix {

struct ActionRef {
    bool up;
    int index;

    bool operator==(const ActionRef&) const = default;
};

/// One instance of a defining relation: two action paths out of cells of
/// start_dim that must agree. Paths are applied left to right.
struct RelationInstance {
    int start_dim;
    std::vector<ActionRef> lhs, rhs;
};

class Site {
public:
    virtual ~Site() = default;
    virtual std::string name() const = 0;
    virtual int down_count(int dim) const = 0; // actions X(dim) -> X(dim-1), dim >= 1
    virtual int up_count(int dim) const = 0;   // actions X(dim) -> X(dim+1)
    virtual std::vector<RelationInstance> relations(int trunc) const = 0;
    virtual std::string down_name(int dim, int k) const = 0;
    virtual std::string up_name(int dim, int k) const = 0;
};

class Presheaf;
using PshPtr = std::shared_ptr<const Presheaf>;

class Presheaf {
public:
    Presheaf(const Site* site, int trunc, int skeleton,
             std::vector<std::vector<std::string>> labels,
             std::vector<std::vector<std::vector<int>>> down,
             std::vector<std::vector<std::vector<int>>> up);

    const Site& site() const { return *site_; }
    int trunc() const { return trunc_; }
    int skeleton() const { return skeleton_; }
    int cells(int dim) const {
        return (dim < 0 || dim > trunc_) ? 0 : static_cast<int>(labels_[dim].size());
    }
    const std::string& label(int dim, int cell) const { return labels_[dim][cell]; }
    int label_index(int dim, const std::string& label) const; // -1 if absent

    int down(int dim, int k, int cell) const { return down_[dim][k][cell]; }
    int up(int dim, int k, int cell) const { return up_[dim][k][cell]; }
    int act(int dim, ActionRef a, int cell) const {
        return a.up ? up(dim, a.index, cell) : down(dim, a.index, cell);
    }
    int act_path(int start_dim, std::span<const ActionRef> path, int cell) const;

    /// True when the cell is the image of some up action from one dimension
    /// below.
    bool degenerate(int dim, int cell) const;
    int nondegenerate_count(int dim) const;

    /// Shape, ranges, the site's relation identities, and the skeleton claim.
    void validate() const;

private:
    const Site* site_;
    int trunc_;
    int skeleton_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<std::vector<int>>> down_; // down_[dim][k][cell]
    std::vector<std::vector<std::vector<int>>> up_;   // up_[dim][k][cell]
};

/// Maximal dimension carrying a nondegenerate cell.
int computed_skeleton(const Presheaf& x);

class PresheafBuilder {
public:
    PresheafBuilder(const Site* site, int trunc);
    int add_cell(int dim, std::string label);
    void set_down(int dim, int k, int cell, int image);
    void set_up(int dim, int k, int cell, int image);
    int cells(int dim) const { return static_cast<int>(labels_[dim].size()); }
    PshPtr finish(bool validate = true);

private:
    const Site* site_;
    int trunc_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<std::vector<int>>> down_, up_;
};

struct PresheafMap {
    PshPtr src, tgt;
    std::vector<std::vector<int>> cells; // per dim

    int apply(int dim, int cell) const { return cells[dim][cell]; }
    void validate() const; // same site and trunc, commutes with all actions
};

PresheafMap identity_map(const PshPtr& x);
PresheafMap compose(const PresheafMap& g, const PresheafMap& f);
bool is_mono(const PresheafMap& f);

struct MapSearchOptions {
    bool bijective = false;
    std::uint64_t max_results = UINT64_MAX;
    /// Optional partial assignment (per dim, -1 = free).
    const std::vector<std::vector<int>>* seed = nullptr;
};

/// All presheaf maps A -> B compatible with the options, sorted
/// lexicographically by their flattened cell assignment.
std::vector<PresheafMap> enumerate_maps(const PshPtr& a, const PshPtr& b,
                                        const MapSearchOptions& opt = {});

std::vector<PresheafMap> hom_maps(const PshPtr& a, const PshPtr& b);
std::optional<PresheafMap> find_isomorphism(const PshPtr& a, const PshPtr& b);

/// Maps B -> X restricting to u along a levelwise-injective incl : A -> B.
std::vector<PresheafMap> extensions(const PresheafMap& incl, const PresheafMap& u,
                                    std::uint64_t max_results = UINT64_MAX);

struct CoproductResult {
    PshPtr object;
    std::vector<PresheafMap> injections;
};
CoproductResult coproduct(const std::vector<PshPtr>& parts);

struct PushoutResult {
    PshPtr object;
    PresheafMap from_left;  // X -> P
    PresheafMap from_right; // Y -> P
};
PushoutResult pushout(const PresheafMap& f, const PresheafMap& g); // f: A->X, g: A->Y

/// The universal map P -> Z out of a pushout, from a compatible cocone
/// (via_left : X -> Z, via_right : Y -> Z). Verifies compatibility.
PresheafMap pushout_induced(const PushoutResult& po, const PresheafMap& via_left,
                            const PresheafMap& via_right);

/// Sub-presheaf spanned by the kept cells; rejects sets not closed under the
/// actions. Returns the object and its inclusion.
std::pair<PshPtr, PresheafMap> subpresheaf(const PshPtr& x,
                                           const std::vector<std::vector<char>>& keep);

struct SubobjectResult {
    PshPtr object;
    PresheafMap inclusion;
};

} // namespace cubix
