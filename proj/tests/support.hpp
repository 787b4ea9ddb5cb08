#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cohomotopy/chains.hpp"
#include "cohomotopy/factory.hpp"
#include "cohomotopy/simplicial.hpp"

namespace testing_support {

using namespace cohomotopy;

struct NamedFixture {
    std::string name;
    std::string spec;
};

/// The manifolds every property suite runs on.
inline const std::vector<NamedFixture>& manifolds()
{
    static const std::vector<NamedFixture> all = {
        {"S4", "sphere:4"},
        {"S3xS1", "product(sphere:3,circle:3)"},
        {"T4", "product(product(circle:3,circle:3),product(circle:3,circle:3))"},
        {"S2xS2", "product(sphere:2,sphere:2)"},
        {"CP2", "fixture:cp2_9"},
        {"RP4", "rp:4"},
        {"RP5", "rp:5"},
    };
    return all;
}

inline std::string spec_of(const std::string& name)
{
    for (const auto& f : manifolds())
        if (f.name == name)
            return f.spec;
    return name;
}

/// Complexes and untwisted chain complexes, built once per test binary.
inline const SimplicialComplex& complex_for(const std::string& name)
{
    static std::map<std::string, std::unique_ptr<SimplicialComplex>> cache;
    auto& slot = cache[name];
    if (!slot)
        slot = std::make_unique<SimplicialComplex>(generate(GeneratorSpec::parse(spec_of(name))));
    return *slot;
}

inline const ChainComplex& chains_for(const std::string& name)
{
    static std::map<std::string, std::unique_ptr<ChainComplex>> cache;
    auto& slot = cache[name];
    if (!slot)
        slot = std::make_unique<ChainComplex>(complex_for(name));
    return *slot;
}

inline Z2Cochain random_cochain(const SimplicialComplex& k, int degree, std::mt19937_64& rng)
{
    Z2Cochain x{degree, Z2Vector(k.count(degree))};
    for (auto& b : x.values)
        b = static_cast<std::uint8_t>(rng() & 1U);
    return x;
}

inline IntVector to_int(const Z2Vector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Integer(v[i]);
    return out;
}

}  // namespace testing_support
