#pragma once

// Chain complexes of a simplicial complex with Z, Z/2 and orientation-twisted
// Z coefficients, their (co)homology, and the Bockstein maps.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "cohomotopy/linalg.hpp"
#include "cohomotopy/reduction.hpp"
#include "cohomotopy/simplicial.hpp"

namespace cohomotopy {

enum class Coefficients { integer, mod2, twisted };

const char* to_string(Coefficients c);

struct ChainVector {
    int degree = 0;
    Coefficients system = Coefficients::integer;
    IntVector values;
};

/// A Z/2 cochain, one bit per simplex of its degree.
struct Z2Cochain {
    int degree = 0;
    Z2Vector values;

    bool is_zero() const;
    friend bool operator==(const Z2Cochain&, const Z2Cochain&) = default;
};

Z2Cochain operator+(const Z2Cochain& a, const Z2Cochain& b);

/// A Z/2 1-cocycle z on the edges of a complex. Determines the local system
/// o_X: the stalk is transported by (-1)^z(e) along an edge e.
class OrientationSystem {
public:
    /// Throws ComplexError when z is not a cocycle.
    OrientationSystem(const SimplicialComplex& complex, Z2Vector z);
    static OrientationSystem trivial(const SimplicialComplex& complex);

    const SimplicialComplex& complex() const { return *complex_; }
    const Z2Vector& cocycle() const { return z_; }
    bool is_trivial() const;

private:
    const SimplicialComplex* complex_;
    Z2Vector z_;
};

/// Matrix of d_k : C_k -> C_{k-1}; the face omitting vertex i has sign
/// (-1)^i. Over Z/2 the entries are reduced. Twisted: the 0-th face of
/// [v0 ... vk] carries an extra (-1)^z(v0 v1).
SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int degree, Coefficients system = Coefficients::integer);
SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int degree, const OrientationSystem& o);

/// Applies d_k (twisted when o is given) directly from the face tables.
IntVector apply_boundary(const SimplicialComplex& k, int degree, const IntVector& chain,
                         const OrientationSystem* o = nullptr);
/// delta x for a Z/2 cochain.
Z2Cochain coboundary(const SimplicialComplex& k, const Z2Cochain& x);
/// delta x over Z for an integer cochain of the given degree.
IntVector coboundary(const SimplicialComplex& k, int degree, const IntVector& x);

/// All (co)homology groups of one coefficient system, computed once on a
/// reduced model of the chain complex. Group generators are representatives
/// in the original (co)chain groups.
class ChainComplex {
public:
    /// Untwisted complex; provides Z and Z/2 (co)homology.
    explicit ChainComplex(const SimplicialComplex& k);
    /// Twisted complex; provides Z-(co)homology with coefficients in o.
    ChainComplex(const SimplicialComplex& k, const OrientationSystem& o);

    const SimplicialComplex& complex() const { return *complex_; }
    bool twisted() const { return twisted_; }
    int dimension() const { return complex_->dimension(); }
    const ReducedComplex& reduced() const { return reduced_; }

    const PresentedGroup& homology(int k) const;
    const PresentedGroup& cohomology(int k) const;
    /// Coordinates of a k-cycle in the generators of homology(k).
    IntVector homology_coordinates(int k, const IntVector& cycle) const;
    IntVector cohomology_coordinates(int k, const IntVector& cocycle) const;
    bool is_boundary(int k, const IntVector& cycle) const;

    /// Z/2 data; only on untwisted complexes (twisted and untwisted agree mod 2).
    const std::vector<Z2Vector>& homology_basis_mod2(int k) const;
    const std::vector<Z2Vector>& cohomology_basis_mod2(int k) const;
    Z2Vector homology_coordinates_mod2(int k, const Z2Vector& cycle) const;
    Z2Vector cohomology_coordinates_mod2(int k, const Z2Vector& cocycle) const;
    /// y with delta y = w over Z/2, or nullopt when w is not a coboundary.
    std::optional<Z2Vector> coboundary_witness_mod2(int k, const Z2Vector& w) const;

    std::size_t betti(int k) const { return homology(k).free_rank; }

private:
    struct Integral {
        std::size_t rank = 0;   // rank of the outgoing map
        IntMatrix V_inverse;    // kernel coordinates are rows [rank, ...) of V^-1 x
        Cokernel quotient;
        PresentedGroup group;
    };
    struct Mod2 {
        std::vector<Z2Vector> basis;
        BitMatrix span;         // columns: boundaries, then the basis
        std::size_t boundary_columns = 0;
    };

    void build();
    Integral integral_level(const IntMatrix& out_map, const IntMatrix& in_map, bool cohomological, int k) const;
    Mod2 mod2_level(const BitMatrix& out_map, const BitMatrix& in_map, bool cohomological, int k) const;
    IntVector integral_coordinates(const Integral& level, const IntVector& reduced) const;
    Z2Vector mod2_coordinates(const Mod2& level, const Z2Vector& reduced) const;
    void require_untwisted() const;

    const SimplicialComplex* complex_;
    std::optional<OrientationSystem> orientation_;
    bool twisted_ = false;
    ReducedComplex reduced_;
    std::vector<Integral> homology_;
    std::vector<Integral> cohomology_;
    std::vector<Mod2> homology2_;
    std::vector<Mod2> cohomology2_;
};

/// The all-ones top chain, checked to be a mod-2 cycle.
ChainVector fundamental_class_mod2(const SimplicialComplex& k);

/// Generator of ker(twisted d_top) with all coefficients +-1 and +1 on the
/// first facet. Throws ComplexError when the kernel is trivial.
ChainVector twisted_fundamental_class(const SimplicialComplex& k, const OrientationSystem& o);

/// Sq^1 as the Bockstein of 0 -> Z/2 -> Z/4 -> Z/2 -> 0, via the {0,1} lift.
Z2Cochain bockstein_sq1(const SimplicialComplex& k, const Z2Cochain& x);

/// beta_1[c] = [1/2 d c_bar] for a mod-2 2-cycle c, c_bar its {0,1} lift.
ChainVector twisted_bockstein_beta1(const SimplicialComplex& k, const OrientationSystem& o, const Z2Vector& c);

/// Mod-2 dot product of a cochain with a chain of the same degree.
int evaluate_pairing(const Z2Cochain& x, const ChainVector& c);

}  // namespace cohomotopy
