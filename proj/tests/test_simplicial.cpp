#include <gtest/gtest.h>

#include "cohomotopy/factory.hpp"
#include "cohomotopy/simplicial.hpp"

using namespace cohomotopy;

TEST(FacetList, ParsesAndRenumbers)
{
    FacetComplex k = load_complex("# a triangle boundary\n10 20\n20 30\n\n10 30\n");
    EXPECT_EQ(k.vertex_count(), 3u);
    EXPECT_EQ(k.dimension(), 1);
    EXPECT_EQ(k.facets(), (std::vector<Simplex>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(FacetList, SortsVerticesInsideLines)
{
    FacetComplex k = load_complex("2 1 0\n");
    EXPECT_EQ(k.facets(), (std::vector<Simplex>{{0, 1, 2}}));
}

TEST(FacetList, RoundTrips)
{
    FacetComplex k = sphere(4);
    k.set_name("S4");
    FacetComplex back = load_complex(write_complex(k));
    EXPECT_EQ(back.facets(), k.facets());
    EXPECT_EQ(write_complex(back), write_complex(k));
}

TEST(FacetList, RejectsMalformedInput)
{
    EXPECT_THROW(load_complex(""), ComplexError);
    EXPECT_THROW(load_complex("# only a comment\n"), ComplexError);
    EXPECT_THROW(load_complex("0 1 2\n0 1\n"), ComplexError);
    EXPECT_THROW(load_complex("0 1 x\n"), ComplexError);
    EXPECT_THROW(load_complex("0 -1 2\n"), ComplexError);
    EXPECT_THROW(load_complex("0 1 1\n"), ComplexError);
    EXPECT_THROW(load_complex("0 1 2\n2 1 0\n"), ComplexError);
}

TEST(FacetList, ErrorMessagesNameTheProblem)
{
    try {
        load_complex("0 1 2\n0 1\n");
        FAIL();
    } catch (const ComplexError& e) {
        EXPECT_NE(std::string(e.what()).find("ragged"), std::string::npos);
    }
    try {
        load_complex("0 1 2\n1 2 0\n");
        FAIL();
    } catch (const ComplexError& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
    }
}

TEST(FacetComplex, ConstructorChecksInvariants)
{
    EXPECT_THROW(FacetComplex(3, {{0, 1}, {1, 3}}), ComplexError);
    EXPECT_THROW(FacetComplex(4, {{0, 1}, {1, 2}}), ComplexError);
    EXPECT_THROW(FacetComplex(3, {{1, 0}}), ComplexError);
    EXPECT_NO_THROW(FacetComplex(3, {{1, 2}, {0, 1}, {0, 2}}));
}

TEST(Skeleton, BoundaryOfSimplexIsComplete)
{
    SimplicialComplex k(sphere(4));
    const std::size_t binom6[] = {6, 15, 20, 15, 6};
    for (int d = 0; d <= 4; ++d)
        EXPECT_EQ(k.count(d), binom6[d]);
    EXPECT_EQ(k.euler_characteristic(), 2);
    EXPECT_EQ(k.total_simplices(), 62u);
}

TEST(Skeleton, LexicographicAndSearchable)
{
    SimplicialComplex k(sphere(3));
    const SimplexIndex& edges = k.simplices(1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto a = edges[i], b = edges[i + 1];
        EXPECT_TRUE(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
    std::vector<Vertex> e{1, 3};
    auto idx = edges.find(e);
    ASSERT_TRUE(idx.has_value());
    EXPECT_EQ(std::vector<Vertex>(edges[*idx].begin(), edges[*idx].end()), e);
    std::vector<Vertex> missing{1, 7};
    EXPECT_FALSE(edges.find(missing).has_value());
}

TEST(Skeleton, FaceTablesAgreeWithVertexLists)
{
    SimplicialComplex k(antipodal_quotient(3));
    for (int d = 1; d <= 3; ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplices(d)[i];
            for (int j = 0; j <= d; ++j) {
                std::vector<Vertex> f;
                for (int t = 0; t <= d; ++t)
                    if (t != j)
                        f.push_back(s[static_cast<std::size_t>(t)]);
                auto g = k.simplices(d - 1)[k.face(d, i, j)];
                ASSERT_EQ(std::vector<Vertex>(g.begin(), g.end()), f);
            }
            auto edge = k.simplices(1)[k.subface(d, i, 0b11)];
            EXPECT_EQ(edge[0], s[0]);
            EXPECT_EQ(edge[1], s[1]);
        }
}

TEST(Validation, AcceptsClosedManifolds)
{
    auto v = validate_closed_pseudomanifold(sphere(4));
    EXPECT_TRUE(v.ok());
    EXPECT_EQ(v.components, 1u);
    EXPECT_TRUE(v.messages().empty());
}

TEST(Validation, RejectsBoundaryAndBranching)
{
    auto disk = validate_closed_pseudomanifold(FacetComplex(5, {{0, 1, 2, 3, 4}}));
    EXPECT_FALSE(disk.ok());
    EXPECT_EQ(disk.ridge_violations.size(), 5u);
    EXPECT_EQ(disk.ridge_violations[0].facet_count, 1u);

    std::vector<Simplex> facets = sphere(4).facets();
    facets.push_back({0, 1, 2, 3, 6});
    auto branched = validate_closed_pseudomanifold(FacetComplex(7, facets));
    EXPECT_FALSE(branched.ok());
    bool three = false;
    for (const auto& r : branched.ridge_violations)
        three = three || r.facet_count == 3;
    EXPECT_TRUE(three);
}

TEST(Validation, RejectsDisconnectedAndLowDimension)
{
    const FacetComplex s4 = sphere(4);
    std::vector<Simplex> facets = s4.facets();
    for (const auto& f : s4.facets()) {
        Simplex g;
        for (auto v : f)
            g.push_back(v + 6);
        facets.push_back(g);
    }
    auto two = validate_closed_pseudomanifold(FacetComplex(12, facets));
    EXPECT_FALSE(two.ok());
    EXPECT_EQ(two.components, 2u);

    auto low = validate_closed_pseudomanifold(sphere(3));
    EXPECT_FALSE(low.ok());
    EXPECT_FALSE(low.dimension_ok);
    EXPECT_FALSE(low.messages().empty());
}
