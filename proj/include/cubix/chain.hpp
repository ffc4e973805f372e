#pragma once

// Finitely generated chain complexes in non-negative degrees over Z or a
// prime field, the interval complex C[1] with its monoidal-segment and
// coalgebra structure, chain realization of cubical sets, homology via
// Smith normal form, and the dg-singular functor over prime fields.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cubix/cubical.hpp"

namespace cubix {

struct Ring {
    enum class Kind { integers, prime_field };
    Kind kind = Kind::integers;
    int p = 0;

    static Ring Z() { return {Kind::integers, 0}; }
    static Ring Fp(int p);
    bool operator==(const Ring&) const = default;
    long long reduce(long long v) const;
    std::string to_string() const;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}
    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    long long at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
    bool operator==(const Matrix&) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<long long> a_;
};

Matrix mat_mul(const Ring& ring, const Matrix& a, const Matrix& b);
Matrix mat_reduce(const Ring& ring, Matrix m);
bool mat_is_zero(const Matrix& m);

class FinChainComplex;
using ChPtr = std::shared_ptr<const FinChainComplex>;

class FinChainComplex {
public:
    /// boundaries[n] : degree n+1 -> degree n (so boundaries.size() = top).
    FinChainComplex(Ring ring, std::vector<std::vector<std::string>> bases,
                    std::vector<Matrix> boundaries);

    const Ring& ring() const { return ring_; }
    int top_degree() const { return static_cast<int>(bases_.size()) - 1; }
    int rank(int degree) const {
        return (degree < 0 || degree > top_degree())
                   ? 0
                   : static_cast<int>(bases_[degree].size());
    }
    const std::string& basis_label(int degree, int i) const { return bases_[degree][i]; }
    /// d : degree -> degree-1; zero matrix outside the stored range.
    Matrix boundary(int degree) const;
    void validate() const; // d o d = 0 over the ring

private:
    Ring ring_;
    std::vector<std::vector<std::string>> bases_;
    std::vector<Matrix> boundaries_;
};

ChPtr unit_complex(Ring ring);
ChPtr zero_complex(Ring ring, int top_degree);

struct ChainMap {
    ChPtr src, tgt;
    std::vector<Matrix> mats; // per degree 0..max(top degrees)

    Matrix mat(int degree) const;
    void validate() const; // commutes with boundaries
};

ChainMap chain_identity(const ChPtr& a);
ChainMap chain_compose(const ChainMap& g, const ChainMap& f);
ChainMap chain_zero_map(const ChPtr& src, const ChPtr& tgt);
bool chain_maps_equal(const ChainMap& a, const ChainMap& b);

/// Binary tensor product with the Koszul differential. Basis in degree n is
/// ordered by (degree of the left factor asc, left index, right index).
class ChainTensor {
public:
    ChainTensor(ChPtr a, ChPtr b);

    const ChPtr& object() const { return object_; }
    const ChPtr& left() const { return left_; }
    const ChPtr& right() const { return right_; }
    int index_of(int deg_a, int ia, int deg_b, int ib) const;
    struct Factors {
        int deg_a, ia, deg_b, ib;
    };
    Factors factors(int degree, int index) const;

private:
    ChPtr left_, right_, object_;
};

/// f (x) g for degree-zero chain maps (no Koszul signs arise).
ChainMap tensor_map(const ChainTensor& src, const ChainTensor& tgt, const ChainMap& f,
                    const ChainMap& g);

/// The interval complex: K(0) + K(1) in degree 0, K(01) in degree 1,
/// d(01) = (1) - (0), with its monoidal-segment structure maps.
struct IntervalC1 {
    ChPtr unit;
    ChPtr complex;
    ChainMap delta0, delta1; // unit -> C[1]
    ChainMap sigma;          // C[1] -> unit
    ChainMap gamma;          // C[1] (x) C[1] -> C[1] (on c1_power(2))
};
IntervalC1 interval_C1(Ring ring);

/// Memoized n-fold power C[1]^{(x)n}; basis of degree k lists the base-3
/// tuples (digits 0,1,2 for (0),(1),(01)) with k digits equal to 2,
/// ascending.
ChPtr c1_power(Ring ring, int n);
int c1_power_index(int n, int degree, std::uint32_t code); // code in base 3
std::uint32_t c1_power_code(int n, int degree, int index);
/// Chain realization of a cube word: L(w) : C^{(x)src} -> C^{(x)tgt}.
ChainMap c1_power_word_map(Ring ring, const CubeWord& w);

struct NamedCheck {
    std::string name;
    bool passed = false;
};

/// Monoidal-segment axioms for C[1] (factorization, associativity, unit,
/// monoid morphism, absorbing end).
std::vector<NamedCheck> interval_axioms_C1(Ring ring);

/// Counital-coalgebra axioms for C[1] and the coalgebra-morphism property of
/// delta^0, delta^1, sigma, gamma.
std::vector<NamedCheck> coalgebra_check_C1(Ring ring);

/// Chain realization of a cubical set: the coend against n -> C[1]^{(x)n}.
class ChainRealization {
public:
    ChainRealization(PshPtr x, Ring ring);

    const ChPtr& object() const { return object_; }
    const PshPtr& source() const { return source_; }

    struct Generator {
        int p, x;
        std::uint32_t code;
    };
    const Generator& rep(int degree, int i) const { return reps_[degree][i]; }
    /// Index of the class of (cell, basis tuple) in its degree; -1 when the
    /// class collapses to zero.
    int class_of(int p, int x, std::uint32_t code) const;

private:
    PshPtr source_;
    Ring ring_;
    ChPtr object_;
    std::vector<std::vector<Generator>> reps_;
    std::vector<std::uint64_t> base_; // offset per dim p
    std::vector<int> class_flat_;     // flat over all (p,x,code); -1 = zero class
    std::uint64_t pair_flat(int p, int x, std::uint32_t code) const;
};

struct Homology {
    int free_rank = 0;
    std::vector<long long> torsion; // invariant factors > 1 (Z only)
};
std::vector<Homology> homology(const FinChainComplex& a);

/// Smith normal form diagonal (non-negative, divisibility chain) of an
/// integer matrix.
std::vector<long long> smith_normal_form(Matrix m);
int rank_mod_p(const Matrix& m, int p);

/// dg-singular: R(A)(n) = chain maps C[1]^{(x)n} -> A over a prime field,
/// as a cubical set with connections. Cell i of dimension n is the i-th map
/// in lexicographic order; `dg_singular_maps` exposes the actual maps.
PshPtr dg_singular(const ChPtr& a, int trunc);
std::vector<std::vector<ChainMap>> dg_singular_maps(const ChPtr& a, int trunc);

} // namespace cubix
