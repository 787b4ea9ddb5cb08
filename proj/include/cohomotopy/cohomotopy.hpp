#pragma once

// The cohomotopy group pi^n(X) = F_1(X) of a closed connected (n+1)-manifold:
// type classification, the extension functional epsilon, assembly of the
// extension 0 -> Z/2 -> F_1(X) -> H_1(X; o_X) -> 0, and the cross-check
// against the Steenrod-square exact sequence.

#include <optional>
#include <string>
#include <vector>

#include "cohomotopy/chains.hpp"
#include "cohomotopy/linalg.hpp"
#include "cohomotopy/simplicial.hpp"
#include "cohomotopy/steenrod.hpp"

namespace cohomotopy {

enum class ManifoldType { I, IIa, IIb };

const char* to_string(ManifoldType t);

struct TypeClassification {
    ManifoldType type = ManifoldType::I;
    /// <w1^2 + w2, r(g)> for each generator g of H_2(X; o_X).
    std::vector<int> functional;
    /// Type I: a twisted 2-cycle with functional value 1.
    std::optional<IntVector> type_one_cycle;
    /// Type IIb: a mod-2 2-cycle on which w1^2 + w2 evaluates to 1.
    std::optional<Z2Vector> obstruction_cycle;
    /// Type IIa: y with delta y = w1^2 + w2.
    std::optional<Z2Vector> pin_witness;
};

/// `untwisted` and `twisted` are the chain complexes of the same manifold,
/// the latter twisted by w1.
TypeClassification classify_type(const ChainComplex& untwisted, const ChainComplex& twisted,
                                 const PinMinusObstruction& pin);

struct EpsilonEntry {
    std::size_t factor = 0;        // index into H_1(o_X).torsion, an even factor
    Integer order;                 // d_i
    int value = 0;                 // epsilon((d_i / 2) x_i)
    IntVector element;             // twisted 1-cycle representing (d_i / 2) x_i
    Z2Vector preimage;             // mod-2 2-cycle c with beta_1[c] = element
    bool preimage_independent = true;
};

struct EpsilonFunctional {
    std::vector<EpsilonEntry> entries;
    /// Dimension of ker(beta_1) on H_2(X; Z/2), the freedom in choosing preimages.
    std::size_t kernel_dimension = 0;

    /// One value per torsion factor of H (0 on odd factors).
    std::vector<int> values_by_factor(const PresentedGroup& h) const;
    bool well_defined() const;
};

/// epsilon on the order-2 element of every even cyclic factor of H_1(X; o_X),
/// through mod-2 2-cycles c with beta_1[c] equal to that element.
EpsilonFunctional epsilon_functional(const ChainComplex& untwisted, const ChainComplex& twisted,
                                     const OrientationSystem& o, const Z2Cochain& obstruction);

/// <x_1 .. x_m, u | 2u, d_i x_i - eps_i u>; eps has one entry per torsion
/// factor of h.
PresentedGroup assemble_extension(const PresentedGroup& h, const std::vector<int>& eps);
PresentedGroup assemble_extension(const PresentedGroup& h, const EpsilonFunctional& eps);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SesCrossCheck {
    /// <Sq^2 r(y), [X]_2> for each generator y of H^{n-1}(X; Z).
    std::vector<int> sq2_values;
    PresentedGroup quotient;   // H^{n+1}(X; Z/2) / im(Sq^2 r)
    std::vector<CheckResult> checks;

    bool passed() const;
};

SesCrossCheck steenrod_ses_crosscheck(const ChainComplex& untwisted, const ChainComplex& twisted,
                                      ManifoldType type, const PresentedGroup& f1);

struct HomologyRow {
    int degree = 0;
    PresentedGroup integral_homology;
    PresentedGroup twisted_homology;
    PresentedGroup integral_cohomology;
    std::size_t mod2_dimension = 0;
};

struct StageTime {
    std::string stage;
    double seconds = 0;
};

struct CohomotopyReport {
    std::string name;
    int dimension = 0;
    std::vector<std::size_t> f_vector;
    long long euler_characteristic = 0;
    ValidationReport validation;
    std::size_t reduced_cells = 0;

    std::vector<HomologyRow> table;
    bool orientable = false;
    StiefelWhitney sw;
    Z2Vector w1_coordinates;       // in the chosen basis of H^1(X; Z/2)
    Z2Vector w2_coordinates;       // in the chosen basis of H^2(X; Z/2)
    PinMinusObstruction pin;
    TypeClassification classification;
    PresentedGroup h1_twisted;
    std::optional<EpsilonFunctional> epsilon;
    PresentedGroup f1;
    std::optional<SesCrossCheck> crosscheck;
    std::vector<CheckResult> checks;
    std::vector<StageTime> timings;

    bool checks_passed() const;
};

struct PipelineOptions {
    bool crosscheck = true;
    /// Highest degree listed in the homology table; negative means all.
    int max_table_degree = -1;
};

/// Runs the full pipeline. Throws ComplexError when validation fails.
CohomotopyReport compute_F1(const FacetComplex& k, const PipelineOptions& options = {});

}  // namespace cohomotopy
