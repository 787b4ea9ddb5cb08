#pragma once

// Cup and cup-i products of mod-2 cochains, Steenrod squares, Wu and
// Stiefel-Whitney classes, and the Pin- obstruction w1^2 + w2.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cohomotopy/chains.hpp"
#include "cohomotopy/simplicial.hpp"

namespace cohomotopy {

/// Alexander-Whitney product: (x u y)[v0..v_{p+q}] = x[v0..vp] y[vp..v_{p+q}].
Z2Cochain cup(const SimplicialComplex& k, const Z2Cochain& x, const Z2Cochain& y);

/// Steenrod's cup-i product over the global vertex order. Zero when the
/// result degree p+q-i falls outside [0, dim].
Z2Cochain cup_i(const SimplicialComplex& k, const Z2Cochain& x, const Z2Cochain& y, int i);

/// Vertex-position masks (mask_x, mask_y) of the terms of x u_i y on an
/// n-simplex for cochain degrees p and q.
std::vector<std::pair<std::uint32_t, std::uint32_t>> cup_i_terms(int n, int p, int q, int i);

/// A mod-2 cocycle standing for its cohomology class.
class CocycleClass {
public:
    CocycleClass() = default;
    /// Throws std::invalid_argument when x is not a cocycle.
    CocycleClass(const SimplicialComplex& k, Z2Cochain x);

    int degree() const { return rep_.degree; }
    const Z2Cochain& representative() const { return rep_; }

private:
    Z2Cochain rep_;
};

/// Sq^k x = x u_{p-k} x for 0 <= k <= p, and 0 for k > p.
CocycleClass sq(const SimplicialComplex& k, int power, const CocycleClass& x);

/// <x, [X]_2>: the facet sum of a top-degree cochain.
int evaluate_top(const SimplicialComplex& k, const Z2Cochain& x);

/// Whether two classes agree, decided by solving delta y = x + y'.
bool same_class(const ChainComplex& c, const Z2Cochain& x, const Z2Cochain& y);

struct WuClasses {
    CocycleClass v1;
    CocycleClass v2;
};

/// v_k is the unique class with <v_k u x, [X]> = <Sq^k x, [X]> for all x in
/// H^{d-k}(X; Z/2). Needs the untwisted complex.
WuClasses wu_classes(const ChainComplex& c);

struct StiefelWhitney {
    CocycleClass w1;
    CocycleClass w2;
};

/// w1 = v1, w2 = v1 u v1 + v2.
StiefelWhitney stiefel_whitney(const ChainComplex& c, const WuClasses& wu);

struct PinMinusObstruction {
    CocycleClass obstruction;            // w1 u w1 + w2
    bool vanishes = false;
    std::optional<Z2Vector> witness;     // delta(witness) = obstruction when it vanishes
};

PinMinusObstruction pin_minus_obstruction(const ChainComplex& c, const StiefelWhitney& sw);

}  // namespace cohomotopy
