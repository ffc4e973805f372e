#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cubix {

/// Which cube category a word lives in. The reduced category is generated
/// by cofaces and codegeneracies; the connections category adds the
/// max-connections.
enum class Flavor : std::uint8_t { reduced, connections };

std::string to_string(Flavor f);
Flavor flavor_from_char(char c); // 'r' or 'c'

enum class GenKind : std::uint8_t { face, degen, conn };

/// One generator letter. Faces carry a sign (0 or 1); for the others the
/// sign field is unused and kept at 0.
struct Gen {
    GenKind kind;
    std::uint8_t sign = 0;
    int index = 0;

    static Gen face(int sign, int i) { return {GenKind::face, static_cast<std::uint8_t>(sign), i}; }
    static Gen degen(int i) { return {GenKind::degen, 0, i}; }
    static Gen conn(int i) { return {GenKind::conn, 0, i}; }

    bool operator==(const Gen&) const = default;
};

/// A set map {0,1}^m -> {0,1}^n stored as a full table. Vertices are packed
/// into unsigned ints with coordinate 0 in the most significant bit, so the
/// packed value of a vertex equals its index in lexicographic order.
class CubeFunction {
public:
    CubeFunction(int src_dim, int tgt_dim, std::vector<std::uint32_t> table);

    static CubeFunction identity(int n);

    int src_dim() const { return src_dim_; }
    int tgt_dim() const { return tgt_dim_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }
    std::uint32_t apply(std::uint32_t vertex) const { return table_[vertex]; }
    const std::vector<std::uint32_t>& table() const { return table_; }

    bool operator==(const CubeFunction&) const = default;

private:
    int src_dim_;
    int tgt_dim_;
    std::vector<std::uint32_t> table_;
};

// Bit helpers for packed vertices of {0,1}^dim (coordinate 0 = MSB).
inline int vertex_coord(std::uint32_t v, int dim, int p) { return (v >> (dim - 1 - p)) & 1u; }
std::uint32_t vertex_insert(std::uint32_t v, int dim, int pos, int bit);
std::uint32_t vertex_erase(std::uint32_t v, int dim, int pos);
std::uint32_t vertex_merge_max(std::uint32_t v, int dim, int pos);
std::string vertex_to_string(std::uint32_t v, int dim);

/// A morphism of the cube category in normal form:
///   faces (indices strictly decreasing) o conns (strictly increasing)
///   o degens (strictly increasing), applied right-to-left to a source of
///   dimension src_dim. Identity words have all three lists empty.
class CubeWord {
public:
    CubeWord(Flavor flavor, int src_dim,
             std::vector<std::pair<int, int>> faces, // (sign, index)
             std::vector<int> conns,
             std::vector<int> degens);

    static CubeWord identity(Flavor f, int n);

    Flavor flavor() const { return flavor_; }
    int src_dim() const { return src_dim_; }
    int tgt_dim() const { return tgt_dim_; }
    bool is_identity() const { return faces_.empty() && conns_.empty() && degens_.empty(); }

    const std::vector<std::pair<int, int>>& faces() const { return faces_; }
    const std::vector<int>& conns() const { return conns_; }
    const std::vector<int>& degens() const { return degens_; }

    /// Letters in outermost-first order (leftmost letter is applied last).
    std::vector<Gen> letters() const;

    bool operator==(const CubeWord&) const = default;

private:
    Flavor flavor_;
    int src_dim_;
    int tgt_dim_;
    std::vector<std::pair<int, int>> faces_;
    std::vector<int> conns_;
    std::vector<int> degens_;
};

/// Semantics of a single generator as a map of cubes.
CubeFunction gen_function(const Gen& g, int at_dim);
std::uint32_t gen_apply(const Gen& g, int at_dim, std::uint32_t v);

/// Dimension shift of a letter: faces +1, degens/conns -1.
inline int gen_delta(const Gen& g) { return g.kind == GenKind::face ? 1 : -1; }

CubeFunction eval(const CubeWord& w);
CubeFunction eval_raw(Flavor flavor, int src_dim, std::span<const Gen> letters);
CubeFunction compose_fn(const CubeFunction& g, const CubeFunction& f);
CubeFunction tensor_fn(const CubeFunction& f, const CubeFunction& g);

/// Rewrites a dimensionally valid generator sequence (outermost-first) into
/// the unique normal form, using the defining relations oriented left to
/// right. Falls back to semantic refactorisation if the rewrite stalls.
CubeWord normalize_raw(Flavor flavor, int src_dim, std::vector<Gen> letters);

CubeWord compose(const CubeWord& g, const CubeWord& f);
CubeWord tensor_word(const CubeWord& f, const CubeWord& g);

/// All normal forms box^m -> box^n, in a fixed deterministic order.
std::vector<CubeWord> enumerate_homs(Flavor flavor, int m, int n);
std::uint64_t hom_count(Flavor flavor, int m, int n);

/// Recovers the normal form of a set map if it lies in the chosen cube
/// category, and nothing otherwise.
std::optional<CubeWord> factorize(const CubeFunction& f, Flavor flavor);

/// Token syntax: "d1@1 . d0@0" (outermost first); identity prints as "id".
CubeWord parse_word(Flavor flavor, std::string_view text, int src_dim = -1);
std::string to_string(const CubeWord& w);
std::string table_to_string(const CubeFunction& f);

} // namespace cubix
