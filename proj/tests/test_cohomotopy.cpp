#include <gtest/gtest.h>

#include <random>

#include "cohomotopy/cohomotopy.hpp"
#include "support.hpp"

using namespace cohomotopy;
using namespace testing_support;

namespace {

PresentedGroup group(std::size_t free_rank, std::vector<long long> torsion)
{
    PresentedGroup g;
    g.free_rank = free_rank;
    for (auto t : torsion)
        g.torsion.push_back(Integer(t));
    return g;
}

const CohomotopyReport& report_for(const std::string& name)
{
    static std::map<std::string, CohomotopyReport> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, compute_F1(complex_for(name).base())).first;
    return it->second;
}

Z2Vector mod2(const IntVector& v)
{
    Z2Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = static_cast<std::uint8_t>(v[i].mod2());
    return out;
}

}  // namespace

TEST(Extension, SmallCases)
{
    EXPECT_EQ(assemble_extension(group(0, {2}), {1}).to_string(), "Z_4");
    EXPECT_EQ(assemble_extension(group(0, {2}), {0}).to_string(), "Z_2 ⊕ Z_2");
    EXPECT_EQ(assemble_extension(group(0, {4}), {1}).to_string(), "Z_8");
    EXPECT_EQ(assemble_extension(group(0, {}), std::vector<int>{}).to_string(), "Z_2");
    EXPECT_EQ(assemble_extension(group(3, {}), std::vector<int>{}).to_string(), "Z^3 ⊕ Z_2");
    EXPECT_EQ(assemble_extension(group(0, {3}), {0}).to_string(), "Z_6");
    EXPECT_EQ(assemble_extension(group(0, {2, 2}), {1, 1}).to_string(), "Z_2 ⊕ Z_4");
    EXPECT_THROW(assemble_extension(group(0, {3}), {1}), std::invalid_argument);
    EXPECT_THROW(assemble_extension(group(0, {2}), std::vector<int>{}), std::invalid_argument);
}

TEST(Extension, ZeroFunctionalSplits)
{
    std::mt19937_64 rng(21);
    const long long orders[] = {2, 3, 4, 6, 8, 12};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long long> t;
        std::size_t n = rng() % 4;
        for (std::size_t i = 0; i < n; ++i)
            t.push_back(orders[rng() % 6]);
        std::sort(t.begin(), t.end());
        // Invariant factors must form a divisor chain; rebuild one from the diagonal.
        SparseIntMatrix diag(t.size(), t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            diag.set(i, i, Integer(t[i]));
        PresentedGroup h = group_from_presentation(diag);
        h.free_rank = rng() % 3;
        SparseIntMatrix with_u(t.size() + 1, t.size() + 1);
        for (std::size_t i = 0; i < t.size(); ++i)
            with_u.set(i, i, Integer(t[i]));
        with_u.set(t.size(), t.size(), Integer(2));
        PresentedGroup expected = group_from_presentation(with_u);
        expected.free_rank = h.free_rank;
        PresentedGroup got = assemble_extension(h, std::vector<int>(h.torsion.size(), 0));
        EXPECT_TRUE(got.isomorphic_to(expected)) << got.to_string() << " vs " << expected.to_string();
    }
}

TEST(Extension, OrderDoublesForAnyFunctional)
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        PresentedGroup h = group(0, {2, 4, 8});
        std::vector<int> eps{static_cast<int>(rng() & 1), static_cast<int>(rng() & 1), static_cast<int>(rng() & 1)};
        PresentedGroup f = assemble_extension(h, eps);
        EXPECT_EQ(*f.order(), Integer(128));
    }
}

TEST(Pipeline, DerivedValues)
{
    struct Expect {
        const char* name;
        ManifoldType type;
        const char* f1;
    };
    for (const auto& e : {Expect{"S4", ManifoldType::IIa, "Z_2"}, Expect{"S3xS1", ManifoldType::IIa, "Z ⊕ Z_2"},
                          Expect{"T4", ManifoldType::IIa, "Z^4 ⊕ Z_2"}, Expect{"S2xS2", ManifoldType::IIa, "Z_2"},
                          Expect{"CP2", ManifoldType::I, "0"}, Expect{"RP4", ManifoldType::I, "0"},
                          Expect{"RP5", ManifoldType::IIb, "Z_4"}}) {
        const CohomotopyReport& r = report_for(e.name);
        EXPECT_EQ(r.classification.type, e.type) << e.name;
        EXPECT_EQ(r.f1.to_string(), e.f1) << e.name;
        EXPECT_TRUE(r.checks_passed()) << e.name;
        ASSERT_TRUE(r.crosscheck.has_value());
        for (const auto& c : r.crosscheck->checks)
            EXPECT_TRUE(c.passed) << e.name << " " << c.name << ": " << c.detail;
    }
}

TEST(Pipeline, TypeCertificates)
{
    const CohomotopyReport& rp4 = report_for("RP4");
    EXPECT_TRUE(rp4.classification.type_one_cycle.has_value());
    const CohomotopyReport& cp2 = report_for("CP2");
    ASSERT_TRUE(cp2.classification.type_one_cycle.has_value());
    const SimplicialComplex& k = complex_for("CP2");
    EXPECT_EQ(evaluate_pairing(cp2.pin.obstruction.representative(),
                               ChainVector{2, Coefficients::integer, *cp2.classification.type_one_cycle}),
              1);
    const CohomotopyReport& s4 = report_for("S4");
    ASSERT_TRUE(s4.classification.pin_witness.has_value());
    EXPECT_EQ(coboundary(complex_for("S4"), Z2Cochain{1, *s4.classification.pin_witness}),
              s4.pin.obstruction.representative());
    const CohomotopyReport& rp5 = report_for("RP5");
    ASSERT_TRUE(rp5.classification.obstruction_cycle.has_value());
    EXPECT_EQ(evaluate_pairing(rp5.pin.obstruction.representative(),
                               ChainVector{2, Coefficients::mod2, to_int(*rp5.classification.obstruction_cycle)}),
              1);
}

TEST(Epsilon, ProjectiveFiveSpace)
{
    const CohomotopyReport& r = report_for("RP5");
    ASSERT_TRUE(r.epsilon.has_value());
    ASSERT_EQ(r.epsilon->entries.size(), 1u);
    const EpsilonEntry& e = r.epsilon->entries[0];
    EXPECT_EQ(e.order, Integer(2));
    EXPECT_EQ(e.value, 1);
    EXPECT_TRUE(r.epsilon->well_defined());
    EXPECT_EQ(r.h1_twisted.to_string(), "Z_2");
}

TEST(Epsilon, IndependentOfPreimageChoice)
{
    // Shifting the chosen preimage by a mod-2 boundary changes neither beta_1 nor the value.
    const CohomotopyReport& r = report_for("RP5");
    const SimplicialComplex& k = complex_for("RP5");
    const ChainComplex& c = chains_for("RP5");
    OrientationSystem o(k, r.sw.w1.representative().values);
    const EpsilonEntry& e = r.epsilon->entries.at(0);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        Z2Vector shifted = mod2(apply_boundary(k, 3, to_int(random_cochain(k, 3, rng).values)));
        for (std::size_t i = 0; i < shifted.size(); ++i)
            shifted[i] ^= e.preimage[i];
        ChainVector beta = twisted_bockstein_beta1(k, o, shifted);
        IntVector diff = beta.values;
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] -= e.element[i];
        EXPECT_TRUE(c.is_boundary(1, diff));
        int value = evaluate_pairing(r.pin.obstruction.representative(),
                                     ChainVector{2, Coefficients::mod2, to_int(shifted)});
        EXPECT_EQ(value, e.value);
    }
    // A second Pin- obstruction representative gives the same value.
    Z2Cochain moved = r.pin.obstruction.representative() + coboundary(k, random_cochain(k, 1, rng));
    EXPECT_EQ(evaluate_pairing(moved, ChainVector{2, Coefficients::mod2, to_int(e.preimage)}), e.value);
}

TEST(Pipeline, RejectsInvalidInput)
{
    EXPECT_THROW(compute_F1(sphere(3)), ComplexError);
    EXPECT_THROW(compute_F1(FacetComplex(5, {{0, 1, 2, 3, 4}})), ComplexError);
}

TEST(Pipeline, OptionsAreHonoured)
{
    PipelineOptions options;
    options.crosscheck = false;
    options.max_table_degree = 2;
    CohomotopyReport r = compute_F1(sphere(4), options);
    EXPECT_FALSE(r.crosscheck.has_value());
    EXPECT_EQ(r.table.size(), 3u);
    EXPECT_TRUE(r.checks_passed());
}

TEST(Pipeline, ClassifyRequiresTwistedPartner)
{
    const ChainComplex& c = chains_for("S4");
    StiefelWhitney sw = stiefel_whitney(c, wu_classes(c));
    EXPECT_THROW(classify_type(c, c, pin_minus_obstruction(c, sw)), std::invalid_argument);
}
