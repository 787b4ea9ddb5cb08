#include "cohomotopy/cohomotopy.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

namespace cohomotopy {

namespace {

int pair_mod2(const Z2Vector& x, const IntVector& c)
{
    int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            acc ^= c[i].mod2();
    return acc;
}

int pair_mod2(const Z2Vector& x, const Z2Vector& c)
{
    int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc ^= (x[i] & c[i]);
    return acc;
}

std::string join_groups(const PresentedGroup& a, const PresentedGroup& b)
{
    return a.to_string() + " vs " + b.to_string();
}

class Stopwatch {
public:
    explicit Stopwatch(std::vector<StageTime>& out) : out_(out), start_(std::chrono::steady_clock::now()) {}
    void lap(const std::string& stage)
    {
        auto now = std::chrono::steady_clock::now();
        out_.push_back({stage, std::chrono::duration<double>(now - start_).count()});
        start_ = now;
    }

private:
    std::vector<StageTime>& out_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

const char* to_string(ManifoldType t)
{
    switch (t) {
    case ManifoldType::I:
        return "I";
    case ManifoldType::IIa:
        return "IIa";
    case ManifoldType::IIb:
        return "IIb";
    }
    return "?";
}

TypeClassification classify_type(const ChainComplex& untwisted, const ChainComplex& twisted,
                                 const PinMinusObstruction& pin)
{
    if (!twisted.twisted() || untwisted.twisted())
        throw std::invalid_argument("classify_type: expected an untwisted and a twisted complex");
    const Z2Vector& o = pin.obstruction.representative().values;
    TypeClassification out;
    const PresentedGroup& h2 = twisted.homology(2);
    for (const auto& g : h2.generators) {
        int v = pair_mod2(o, g);
        out.functional.push_back(v);
        if (v && !out.type_one_cycle)
            out.type_one_cycle = g;
    }
    if (out.type_one_cycle) {
        out.type = ManifoldType::I;
    } else if (pin.vanishes) {
        out.type = ManifoldType::IIa;
        out.pin_witness = pin.witness;
    } else {
        out.type = ManifoldType::IIb;
        for (const auto& c : untwisted.homology_basis_mod2(2))
            if (pair_mod2(o, c)) {
                out.obstruction_cycle = c;
                break;
            }
        if (!out.obstruction_cycle)
            throw std::logic_error("classify_type: nonzero obstruction class pairs trivially with H_2(X; Z/2)");
    }
    return out;
}

std::vector<int> EpsilonFunctional::values_by_factor(const PresentedGroup& h) const
{
    std::vector<int> out(h.torsion.size(), 0);
    for (const auto& e : entries)
        out.at(e.factor) = e.value;
    return out;
}

bool EpsilonFunctional::well_defined() const
{
    for (const auto& e : entries)
        if (!e.preimage_independent)
            return false;
    return true;
}

EpsilonFunctional epsilon_functional(const ChainComplex& untwisted, const ChainComplex& twisted,
                                     const OrientationSystem& o, const Z2Cochain& obstruction)
{
    const SimplicialComplex& k = untwisted.complex();
    const PresentedGroup& h1 = twisted.homology(1);
    const auto& basis = untwisted.homology_basis_mod2(2);

    std::vector<std::size_t> even;
    for (std::size_t i = 0; i < h1.torsion.size(); ++i)
        if (h1.torsion[i].is_even())
            even.push_back(i);

    // beta_1 on the mod-2 basis, in coordinates of Tor_2 H_1(o_X).
    BitMatrix beta(even.size(), basis.size());
    std::vector<int> obstruction_values;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        obstruction_values.push_back(pair_mod2(obstruction.values, basis[j]));
        IntVector coords = twisted.homology_coordinates(1, twisted_bockstein_beta1(k, o, basis[j]).values);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_zero())
                continue;
            bool torsion = i < h1.torsion.size();
            if (!torsion || !h1.torsion[i].is_even())
                throw std::logic_error("epsilon_functional: beta_1 image is not 2-torsion");
            Integer half = Integer::divexact(h1.torsion[i], Integer(2));
            if (coords[i] != half)
                throw std::logic_error("epsilon_functional: beta_1 image is not 2-torsion");
            std::size_t row = static_cast<std::size_t>(std::find(even.begin(), even.end(), i) - even.begin());
            beta.set(row, j, true);
        }
    }

    EpsilonFunctional out;
    std::vector<Z2Vector> kernel = kernel_mod2(beta);
    out.kernel_dimension = kernel.size();
    for (std::size_t row = 0; row < even.size(); ++row) {
        Z2Vector target(even.size(), 0);
        target[row] = 1;
        auto lambda = solve_mod2(beta, target);
        if (!lambda)
            throw std::runtime_error("epsilon_functional: no mod-2 2-cycle maps onto a Tor_2 generator; "
                                     "beta_1 should be surjective here");
        EpsilonEntry e;
        e.factor = even[row];
        e.order = h1.torsion[e.factor];
        Integer half = Integer::divexact(e.order, Integer(2));
        for (const auto& v : h1.generators[e.factor])
            e.element.push_back(v * half);
        e.preimage.assign(k.count(2), 0);
        int value = 0;
        for (std::size_t j = 0; j < basis.size(); ++j)
            if ((*lambda)[j]) {
                value ^= obstruction_values[j];
                for (std::size_t s = 0; s < e.preimage.size(); ++s)
                    e.preimage[s] ^= basis[j][s];
            }
        e.value = value;
        if (pair_mod2(obstruction.values, e.preimage) != value)
            throw std::logic_error("epsilon_functional: inconsistent evaluation");
        // A second preimage differs by an element of ker(beta_1).
        for (const auto& kv : kernel) {
            int shift = 0;
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (kv[j])
                    shift ^= obstruction_values[j];
            if (shift)
                e.preimage_independent = false;
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

PresentedGroup assemble_extension(const PresentedGroup& h, const std::vector<int>& eps)
{
    if (eps.size() != h.torsion.size())
        throw std::invalid_argument("assemble_extension: need one epsilon value per torsion factor");
    const std::size_t m = h.torsion.size() + h.free_rank;
    SparseIntMatrix relations(h.torsion.size() + 1, m + 1);
    for (std::size_t i = 0; i < h.torsion.size(); ++i) {
        if (eps[i] && !h.torsion[i].is_even())
            throw std::invalid_argument("assemble_extension: epsilon must vanish on odd factors");
        relations.set(i, i, h.torsion[i]);
        if (eps[i])
            relations.set(i, m, Integer(-1));
    }
    relations.set(h.torsion.size(), m, Integer(2));
    return group_from_presentation(relations);
}

PresentedGroup assemble_extension(const PresentedGroup& h, const EpsilonFunctional& eps)
{
    return assemble_extension(h, eps.values_by_factor(h));
}

bool SesCrossCheck::passed() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

SesCrossCheck steenrod_ses_crosscheck(const ChainComplex& untwisted, const ChainComplex& twisted, ManifoldType type,
                                      const PresentedGroup& f1)
{
    const SimplicialComplex& k = untwisted.complex();
    const int d = k.dimension();
    SesCrossCheck out;
    bool hit = false;
    for (const auto& y : untwisted.cohomology(d - 2).generators) {
        Z2Vector bits(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            bits[i] = static_cast<std::uint8_t>(y[i].mod2());
        CocycleClass ry(k, Z2Cochain{d - 2, std::move(bits)});
        int v = evaluate_top(k, sq(k, 2, ry).representative());
        out.sq2_values.push_back(v);
        hit = hit || v;
    }
    if (!hit)
        out.quotient.torsion.push_back(Integer(2));

    const bool q_trivial = out.quotient.is_trivial();
    out.checks.push_back({"type_matches_sq2_cokernel", q_trivial == (type == ManifoldType::I),
                          std::string("coker(Sq2 r) = ") + out.quotient.to_string() + ", type " + to_string(type)});

    const PresentedGroup& hn = untwisted.cohomology(d - 1);
    const PresentedGroup& h1 = twisted.homology(1);
    out.checks.push_back({"twisted_duality_degree_one", hn.isomorphic_to(h1), join_groups(hn, h1)});

    if (f1.is_finite() && hn.is_finite()) {
        Integer expected = *out.quotient.order() * *hn.order();
        std::ostringstream detail;
        detail << "|F1| = " << *f1.order() << ", |coker| * |H^n| = " << expected;
        out.checks.push_back({"order_formula", *f1.order() == expected, detail.str()});
    } else {
        std::ostringstream detail;
        detail << "infinite; free ranks " << f1.free_rank << " and " << hn.free_rank;
        out.checks.push_back({"order_formula", f1.free_rank == hn.free_rank, detail.str()});
    }
    return out;
}

bool CohomotopyReport::checks_passed() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return !crosscheck || crosscheck->passed();
}

CohomotopyReport compute_F1(const FacetComplex& input, const PipelineOptions& options)
{
    CohomotopyReport r;
    Stopwatch clock(r.timings);
    r.name = input.name();
    r.validation = validate_closed_pseudomanifold(input);
    clock.lap("validation");
    if (!r.validation.ok()) {
        std::string msg = "input is not a closed connected pseudomanifold of dimension >= 4";
        for (const auto& m : r.validation.messages())
            msg += "\n  " + m;
        throw ComplexError(msg);
    }

    SimplicialComplex k(input);
    const int d = k.dimension();
    r.dimension = d;
    for (int j = 0; j <= d; ++j)
        r.f_vector.push_back(k.count(j));
    r.euler_characteristic = k.euler_characteristic();
    clock.lap("faces");

    ChainComplex untwisted(k);
    for (int j = 0; j <= d; ++j)
        r.reduced_cells += untwisted.reduced().reduced_size(j);
    clock.lap("chains");

    WuClasses wu = wu_classes(untwisted);
    r.sw = stiefel_whitney(untwisted, wu);
    r.w1_coordinates = untwisted.cohomology_coordinates_mod2(1, r.sw.w1.representative().values);
    r.w2_coordinates = untwisted.cohomology_coordinates_mod2(2, r.sw.w2.representative().values);
    r.orientable = untwisted.homology(d).free_rank == 1;
    clock.lap("stiefel_whitney");

    OrientationSystem o(k, r.sw.w1.representative().values);
    ChainComplex twisted(k, o);
    bool fundamental = true;
    std::string fundamental_detail = "all coefficients +-1";
    try {
        twisted_fundamental_class(k, o);
    } catch (const ComplexError& e) {
        fundamental = false;
        fundamental_detail = e.what();
    }
    r.h1_twisted = twisted.homology(1);
    clock.lap("twisted_chains");

    r.pin = pin_minus_obstruction(untwisted, r.sw);
    r.classification = classify_type(untwisted, twisted, r.pin);
    clock.lap("classification");

    if (r.classification.type == ManifoldType::I) {
        r.f1 = r.h1_twisted;
    } else {
        r.epsilon = epsilon_functional(untwisted, twisted, o, r.pin.obstruction.representative());
        r.f1 = assemble_extension(r.h1_twisted, *r.epsilon);
    }
    clock.lap("extension");

    const int top = options.max_table_degree < 0 ? d : std::min(d, options.max_table_degree);
    for (int j = 0; j <= top; ++j)
        r.table.push_back({j, untwisted.homology(j), twisted.homology(j), untwisted.cohomology(j),
                           untwisted.cohomology_basis_mod2(j).size()});

    r.checks.push_back({"twisted_fundamental_class", fundamental, fundamental_detail});
    {
        const PresentedGroup& top_tw = twisted.homology(d);
        r.checks.push_back({"twisted_top_homology", top_tw.free_rank == 1 && top_tw.torsion.empty(),
                            "H_d(X; o_X) = " + top_tw.to_string()});
    }
    {
        long long chi = 0;
        for (int j = 0; j <= d; ++j)
            chi += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(untwisted.betti(j));
        r.checks.push_back({"euler_characteristic", chi == r.euler_characteristic,
                            std::to_string(chi) + " from Betti numbers, " + std::to_string(r.euler_characteristic) +
                                " from simplex counts"});
    }
    {
        bool ok = true;
        std::string detail;
        for (int j = 0; j <= d; ++j)
            if (!untwisted.cohomology(j).isomorphic_to(twisted.homology(d - j))) {
                ok = false;
                detail += "degree " + std::to_string(j) + ": " +
                          join_groups(untwisted.cohomology(j), twisted.homology(d - j)) + "; ";
            }
        r.checks.push_back({"twisted_poincare_duality", ok, ok ? "H^k(X; Z) = H_{d-k}(X; o_X) for all k" : detail});
    }
    {
        const PresentedGroup& h = r.h1_twisted;
        bool ok = r.f1.free_rank == h.free_rank;
        std::string detail = "F1 = " + r.f1.to_string() + ", H_1(o_X) = " + h.to_string();
        if (ok && h.is_finite()) {
            Integer factor = r.classification.type == ManifoldType::I ? Integer(1) : Integer(2);
            ok = *r.f1.order() == *h.order() * factor;
        }
        r.checks.push_back({"extension_order", ok, detail});
    }
    if (r.epsilon)
        r.checks.push_back({"epsilon_well_defined", r.epsilon->well_defined(),
                            "ker(beta_1) has dimension " + std::to_string(r.epsilon->kernel_dimension)});

    if (options.crosscheck) {
        r.crosscheck = steenrod_ses_crosscheck(untwisted, twisted, r.classification.type, r.f1);
        clock.lap("crosscheck");
    }
    return r;
}

}  // namespace cohomotopy
