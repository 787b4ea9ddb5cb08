#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohomotopy {

using Vertex = std::int32_t;
using Simplex = std::vector<Vertex>;

/// Raised for malformed facet-list documents and invalid complexes.
class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pure simplicial complex given by its facets.
///
/// Facets are strictly increasing vertex tuples of equal length, stored in
/// lexicographic order without duplicates; every vertex in [0, vertex_count)
/// occurs in some facet. The vertex numbering is the global total order from
/// which every orientation sign is derived.
class FacetComplex {
public:
    FacetComplex() = default;
    /// Throws ComplexError when an invariant is violated. Facets may be given
    /// in any order; each facet must already be strictly increasing.
    FacetComplex(std::size_t vertex_count, std::vector<Simplex> facets, std::string name = {});

    std::size_t vertex_count() const { return vertex_count_; }
    int dimension() const { return dimension_; }
    const std::vector<Simplex>& facets() const { return facets_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

private:
    std::size_t vertex_count_ = 0;
    int dimension_ = -1;
    std::vector<Simplex> facets_;
    std::string name_;
};

/// Parses the facet-list format: '#' comment lines (the first one, if it precedes
/// every facet, becomes the name), one facet per line as
/// whitespace-separated non-negative integers. Vertex labels are renumbered
/// to 0..n-1 preserving their order.
FacetComplex load_complex(const std::string& text);
FacetComplex load_complex_file(const std::string& path);
/// Deterministic facet-list text: an optional "# name" line, then one facet
/// per line in lexicographic order.
std::string write_complex(const FacetComplex& k);

/// All k-simplices of a complex in lexicographic order.
class SimplexIndex {
public:
    SimplexIndex() = default;
    SimplexIndex(int degree, std::vector<Vertex> flat);

    int degree() const { return degree_; }
    std::size_t size() const { return degree_ < 0 ? 0 : data_.size() / static_cast<std::size_t>(degree_ + 1); }
    std::span<const Vertex> operator[](std::size_t i) const
    {
        const auto w = static_cast<std::size_t>(degree_ + 1);
        return {data_.data() + i * w, w};
    }
    std::optional<std::size_t> find(std::span<const Vertex> simplex) const;

private:
    int degree_ = -1;
    std::vector<Vertex> data_;
};

/// All k-faces of all facets, deduplicated and canonically ordered.
SimplexIndex skeleton(const FacetComplex& k, int degree);

/// A facet complex with every skeleton and the face-incidence tables built.
/// Immutable after construction.
class SimplicialComplex {
public:
    explicit SimplicialComplex(FacetComplex k);

    const FacetComplex& base() const { return base_; }
    int dimension() const { return base_.dimension(); }
    const SimplexIndex& simplices(int k) const { return skeleta_.at(static_cast<std::size_t>(k)); }
    std::size_t count(int k) const
    {
        return (k < 0 || k > dimension()) ? 0 : skeleta_[static_cast<std::size_t>(k)].size();
    }
    std::size_t total_simplices() const;

    /// Index of the face of simplex i (of degree k >= 1) omitting position j.
    std::size_t face(int k, std::size_t i, int j) const
    {
        return faces_[static_cast<std::size_t>(k)][i * static_cast<std::size_t>(k + 1) + static_cast<std::size_t>(j)];
    }
    /// Index of the sub-simplex of simplex i (degree k) spanned by the vertex
    /// positions set in `mask`.
    std::size_t subface(int k, std::size_t i, std::uint32_t mask) const;

    long long euler_characteristic() const;

private:
    FacetComplex base_;
    std::vector<SimplexIndex> skeleta_;
    std::vector<std::vector<std::uint32_t>> faces_;
};

struct RidgeViolation {
    Simplex ridge;
    std::size_t facet_count = 0;
};

struct ValidationReport {
    int dimension = -1;
    std::vector<RidgeViolation> ridge_violations;
    std::size_t components = 0;
    bool dimension_ok = false;
    bool connected = false;

    bool ok() const { return ridge_violations.empty() && connected && dimension_ok; }
    /// One human-readable line per violation.
    std::vector<std::string> messages() const;
};

/// Minimum dimension accepted by the pipeline (n + 1 with n >= 3).
inline constexpr int kMinimumDimension = 4;

/// Checks that every ridge lies in exactly two facets, that the facet
/// adjacency graph is connected, and that the dimension is at least 4.
ValidationReport validate_closed_pseudomanifold(const FacetComplex& k);

}  // namespace cohomotopy
