#pragma once

// Standard triangulations: boundary spheres, polygons, barycentric
// subdivisions, real projective spaces as antipodal quotients, and
// staircase products. Also loads the bundled fixture files.

#include <cstddef>
#include <string>
#include <vector>

#include "cohomotopy/simplicial.hpp"

namespace cohomotopy {

/// Boundary of the (d+1)-simplex.
FacetComplex sphere(int d);
/// The m-gon.
FacetComplex circle(int m);
/// Vertices are the faces of k ordered by (size, lex); facets are maximal flags.
FacetComplex barycentric_subdivision(const FacetComplex& k);
/// Boundary of the (d+1)-dimensional cross-polytope; vertex 2i is +e_i and
/// 2i+1 is -e_i.
FacetComplex cross_polytope_sphere(int d);
/// RP^d: subdivided cross-polytope modulo the antipodal map.
FacetComplex antipodal_quotient(int d);
/// Staircase triangulation of |k| x |l|; vertex (a, b) gets index a * |V(l)| + b.
FacetComplex product(const FacetComplex& k, const FacetComplex& l);

/// Number of simplices (all dimensions) of antipodal_quotient(d), without
/// building it.
std::size_t antipodal_quotient_size(int d);

/// Parsed generator description:
///   sphere:D  rp:D  circle:M  product(A,B)  subdivide(A)  fixture:NAME
struct GeneratorSpec {
    std::string family;
    int parameter = 0;
    std::string fixture;
    std::vector<GeneratorSpec> children;

    static GeneratorSpec parse(const std::string& text);
    std::string to_string() const;
};

FacetComplex generate(const GeneratorSpec& spec);

/// COHOMOTOPY_FIXTURES if set, otherwise the source-tree fixtures directory.
std::string fixture_directory();
std::vector<std::string> fixture_names();
FacetComplex load_fixture(const std::string& name);

}  // namespace cohomotopy
