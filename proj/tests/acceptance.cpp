// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--allow-slow]
//
// --allow-slow (or COHOMOTOPY_ALLOW_SLOW=1) adds RP^6 and RP^7 to criteria 1 and 2.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "cohomotopy/cohomotopy.hpp"
#include "cohomotopy/factory.hpp"
#include "cohomotopy/parallel.hpp"
#include "cohomotopy/report.hpp"
#include "support.hpp"

using namespace cohomotopy;
using namespace testing_support;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            passed = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::map<std::string, CohomotopyReport>& reports()
{
    static std::map<std::string, CohomotopyReport> cache;
    return cache;
}

const CohomotopyReport& report_for(const std::string& name)
{
    auto it = reports().find(name);
    if (it == reports().end())
        it = reports().emplace(name, compute_F1(complex_for(name).base())).first;
    return it->second;
}

Z2Vector coordinates(const ChainComplex& c, const CocycleClass& x)
{
    return c.cohomology_coordinates_mod2(x.degree(), x.representative().values);
}

Z2Vector mod2(const IntVector& v)
{
    Z2Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = static_cast<std::uint8_t>(v[i].mod2());
    return out;
}

Z2Cochain power(const SimplicialComplex& k, const Z2Cochain& a, int m)
{
    Z2Cochain out{0, Z2Vector(k.count(0), 1)};
    for (int i = 0; i < m; ++i)
        out = cup(k, out, a);
    return out;
}

Integer determinant(std::vector<std::vector<Integer>> a)
{
    const std::size_t n = a.size();
    Integer sign(1), prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k].is_zero())
            ++p;
        if (p == n)
            return Integer(0);
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = Integer::divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            fn(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// ---------------------------------------------------------------------------

void projective_spaces(Outcome& out, bool allow_slow)
{
    struct Case {
        int d;
        ManifoldType type;
        const char* f1;
        double limit;
        bool slow;
    };
    const Case cases[] = {{4, ManifoldType::I, "0", 120, false},
                          {5, ManifoldType::IIb, "Z_4", 900, false},
                          {6, ManifoldType::IIa, "Z_2", 0, true},
                          {7, ManifoldType::IIa, "Z_2 ⊕ Z_2", 0, true}};
    for (const auto& c : cases) {
        if (c.slow && !allow_slow) {
            out.detail << "RP" << c.d << " skipped (needs --allow-slow); ";
            continue;
        }
        if (c.slow) {
            // Roughly 600 bytes per simplex; do not start what cannot fit.
            const double needed = static_cast<double>(antipodal_quotient_size(c.d)) * 600.0;
            const double available = static_cast<double>(sysconf(_SC_PHYS_PAGES)) * sysconf(_SC_PAGE_SIZE);
            if (needed > available) {
                out.detail << "RP" << c.d << " not attempted (needs about " << static_cast<int>(needed / 1e9)
                           << " GB, machine has " << static_cast<int>(available / 1e9) << " GB); ";
                out.require(false, "RP" + std::to_string(c.d) + " exceeds memory");
                continue;
            }
        }
        auto start = Clock::now();
        CohomotopyReport r = compute_F1(antipodal_quotient(c.d));
        double t = seconds_since(start);
        out.detail << "RP" << c.d << " type " << to_string(r.classification.type) << " F1 " << r.f1.to_string()
                   << " in " << static_cast<int>(t + 0.5) << " s; ";
        out.require(r.classification.type == c.type, "RP" + std::to_string(c.d) + " type");
        out.require(r.f1.to_string() == c.f1, "RP" + std::to_string(c.d) + " F1");
        out.require(r.checks_passed(), "RP" + std::to_string(c.d) + " internal checks");
        if (c.limit > 0)
            out.require(t < c.limit, "RP" + std::to_string(c.d) + " time limit");
        reports().emplace("RP" + std::to_string(c.d), std::move(r));
    }
}

void stiefel_whitney_truth(Outcome& out)
{
    struct Case {
        const char* name;
        Z2Vector w1, w2;
    };
    for (const auto& c : {Case{"RP4", {1}, {0}}, Case{"RP5", {0}, {1}}}) {
        const ChainComplex& chains = chains_for(c.name);
        const SimplicialComplex& k = chains.complex();
        const CohomotopyReport& r = report_for(c.name);
        // Independent check in the basis {a, a^2}: w1 and w2 expressed through a.
        Z2Cochain a{1, chains.cohomology_basis_mod2(1).at(0)};
        Z2Cochain expect_w1 = c.w1[0] ? a : Z2Cochain{1, Z2Vector(k.count(1), 0)};
        Z2Cochain expect_w2 = c.w2[0] ? cup(k, a, a) : Z2Cochain{2, Z2Vector(k.count(2), 0)};
        out.require(same_class(chains, r.sw.w1.representative(), expect_w1), std::string(c.name) + " w1");
        out.require(same_class(chains, r.sw.w2.representative(), expect_w2), std::string(c.name) + " w2");
        out.detail << c.name << " w1 " << (c.w1[0] ? "a" : "0") << " w2 " << (c.w2[0] ? "a^2" : "0") << "; ";
        out.require(coordinates(chains, r.sw.w1) == c.w1 && coordinates(chains, r.sw.w2) == c.w2,
                    std::string(c.name) + " coordinates");
    }
    // H^k(RP^d; Z/2) is spanned by a^k, so coordinates decide the slow cases.
    for (const auto& c : {Case{"RP6", {1}, {1}}, Case{"RP7", {0}, {0}}}) {
        auto it = reports().find(c.name);
        if (it == reports().end()) {
            out.detail << c.name << " not computed; ";
            continue;
        }
        out.detail << c.name << " w1 " << (c.w1[0] ? "a" : "0") << " w2 " << (c.w2[0] ? "a^2" : "0") << "; ";
        out.require(it->second.w1_coordinates == c.w1 && it->second.w2_coordinates == c.w2, c.name);
    }
}

void twisted_h1_of_rp4(Outcome& out)
{
    const CohomotopyReport& r = report_for("RP4");
    out.detail << "H_1(RP4; o) = " << r.h1_twisted.to_string() << ", F1 = " << r.f1.to_string();
    out.require(r.h1_twisted.is_trivial(), "H_1 twisted");
    out.require(r.f1.is_trivial(), "F1");
}

void crosscheck_equivalence(Outcome& out)
{
    for (const auto& f : manifolds()) {
        const CohomotopyReport& r = report_for(f.name);
        bool ok = r.crosscheck && r.crosscheck->passed();
        out.require(ok, f.name);
        if (ok)
            out.detail << f.name << " coker " << r.crosscheck->quotient.to_string() << "; ";
    }
}

void derived_values(Outcome& out)
{
    const std::pair<const char*, const char*> expected[] = {
        {"S4", "Z_2"}, {"S3xS1", "Z ⊕ Z_2"}, {"T4", "Z^4 ⊕ Z_2"}, {"S2xS2", "Z_2"}, {"CP2", "0"}};
    for (const auto& [name, f1] : expected) {
        const CohomotopyReport& r = report_for(name);
        out.detail << name << " " << r.f1.to_string() << "; ";
        out.require(r.f1.to_string() == f1, name);
        out.require(r.checks_passed(), std::string(name) + " internal checks");
    }
}

void property_suites(Outcome& out)
{
    std::mt19937_64 rng(20261016);
    int suites = 0;

    // boundary squares to zero with Z, Z/2 and twisted coefficients
    for (const auto& f : manifolds()) {
        const SimplicialComplex& k = complex_for(f.name);
        OrientationSystem o(k, report_for(f.name).sw.w1.representative().values);
        OrientationSystem other(k, (coboundary(k, random_cochain(k, 0, rng)) +
                                    Z2Cochain{1, report_for(f.name).sw.w1.representative().values})
                                       .values);
        for (int j = 2; j <= k.dimension(); ++j) {
            out.require((boundary_matrix(k, j - 1) * boundary_matrix(k, j)).is_zero(), f.name + " dd Z");
            SparseIntMatrix m2 =
                boundary_matrix(k, j - 1, Coefficients::mod2) * boundary_matrix(k, j, Coefficients::mod2);
            bool even = true;
            for (std::size_t c = 0; c < m2.cols(); ++c)
                for (const auto& entry : m2.column(c))
                    even = even && entry.second.is_even();
            out.require(even, f.name + " dd Z/2");
            out.require((boundary_matrix(k, j - 1, o) * boundary_matrix(k, j, o)).is_zero(), f.name + " dd o");
            out.require((boundary_matrix(k, j - 1, other) * boundary_matrix(k, j, other)).is_zero(),
                        f.name + " dd o'");
        }
    }
    ++suites;

    // twisted Poincare duality in every degree
    for (const auto& f : manifolds()) {
        const SimplicialComplex& k = complex_for(f.name);
        const ChainComplex& c = chains_for(f.name);
        ChainComplex tw(k, OrientationSystem(k, report_for(f.name).sw.w1.representative().values));
        const int d = k.dimension();
        for (int j = 0; j <= d; ++j) {
            out.require(tw.homology(j).isomorphic_to(c.cohomology(d - j)), f.name + " PD H_" + std::to_string(j));
            out.require(tw.cohomology(j).isomorphic_to(c.homology(d - j)), f.name + " PD H^" + std::to_string(j));
        }
    }
    ++suites;

    // Z/2 duality pairing is nondegenerate
    for (const auto& f : manifolds()) {
        const ChainComplex& c = chains_for(f.name);
        const SimplicialComplex& k = c.complex();
        const int d = k.dimension();
        for (int j = 0; j <= d; ++j) {
            const auto& left = c.cohomology_basis_mod2(j);
            const auto& right = c.cohomology_basis_mod2(d - j);
            BitMatrix pairing(left.size(), right.size());
            for (std::size_t a = 0; a < left.size(); ++a)
                for (std::size_t b = 0; b < right.size(); ++b)
                    pairing.set(a, b, evaluate_top(k, cup(k, Z2Cochain{j, left[a]}, Z2Cochain{d - j, right[b]})));
            out.require(left.size() == right.size() && rank_mod2(pairing) == left.size(),
                        f.name + " Z/2 pairing degree " + std::to_string(j));
        }
    }
    ++suites;

    // coboundary formula for cup-i on 100 random pairs per fixture
    for (const auto& f : manifolds()) {
        const SimplicialComplex& k = complex_for(f.name);
        const int d = k.dimension();
        int checked = 0;
        while (checked < 100) {
            int p = static_cast<int>(rng() % static_cast<unsigned>(d));
            int q = static_cast<int>(rng() % static_cast<unsigned>(d));
            int i = static_cast<int>(rng() % static_cast<unsigned>(std::min(p, q) + 1));
            if (p + q - i + 1 > d)
                continue;
            Z2Cochain x = random_cochain(k, p, rng), y = random_cochain(k, q, rng);
            Z2Cochain rhs = cup_i(k, coboundary(k, x), y, i) + cup_i(k, x, coboundary(k, y), i);
            if (i > 0)
                rhs = rhs + cup_i(k, x, y, i - 1) + cup_i(k, y, x, i - 1);
            out.require(coboundary(k, cup_i(k, x, y, i)) == rhs, f.name + " cup_i identity");
            ++checked;
        }
    }
    ++suites;

    // Sq^1 as x u_{p-1} x agrees with the Bockstein on random cocycles
    for (const auto& f : manifolds()) {
        const ChainComplex& c = chains_for(f.name);
        const SimplicialComplex& k = c.complex();
        for (int p = 1; p < k.dimension(); ++p)
            for (int trial = 0; trial < 3; ++trial) {
                Z2Cochain x = coboundary(k, random_cochain(k, p - 1, rng));
                for (const auto& b : c.cohomology_basis_mod2(p))
                    if (rng() & 1U)
                        x = x + Z2Cochain{p, b};
                CocycleClass cls(k, x);
                out.require(same_class(c, sq(k, 1, cls).representative(), bockstein_sq1(k, x)),
                            f.name + " Sq1 degree " + std::to_string(p));
            }
    }
    ++suites;

    // Sq^s(a^m) = C(m, s) a^{m+s} on projective spaces
    for (const char* name : {"RP4", "RP5"}) {
        const ChainComplex& c = chains_for(name);
        const SimplicialComplex& k = c.complex();
        const int d = k.dimension();
        Z2Cochain a{1, c.cohomology_basis_mod2(1).at(0)};
        for (int m = 1; m <= d; ++m) {
            long long binom = 1;
            for (int s = 0; s <= m && m + s <= d; ++s) {
                if (s > 0)
                    binom = binom * (m - s + 1) / s;
                Z2Cochain expected = binom % 2 ? power(k, a, m + s) : Z2Cochain{m + s, Z2Vector(k.count(m + s), 0)};
                out.require(same_class(c, sq(k, s, CocycleClass(k, power(k, a, m))).representative(), expected),
                            std::string(name) + " Sq^" + std::to_string(s) + " a^" + std::to_string(m));
            }
        }
    }
    ++suites;

    // epsilon does not depend on the chosen preimage
    {
        const CohomotopyReport& r = report_for("RP5");
        const SimplicialComplex& k = complex_for("RP5");
        const ChainComplex& c = chains_for("RP5");
        OrientationSystem o(k, r.sw.w1.representative().values);
        out.require(r.epsilon && r.epsilon->well_defined(), "epsilon kernel test");
        if (r.epsilon)
            for (const auto& e : r.epsilon->entries)
                for (int trial = 0; trial < 3; ++trial) {
                    Z2Vector shifted = mod2(apply_boundary(k, 3, to_int(random_cochain(k, 3, rng).values)));
                    for (std::size_t i = 0; i < shifted.size(); ++i)
                        shifted[i] ^= e.preimage[i];
                    IntVector diff = twisted_bockstein_beta1(k, o, shifted).values;
                    for (std::size_t i = 0; i < diff.size(); ++i)
                        diff[i] -= e.element[i];
                    out.require(c.is_boundary(1, diff), "shifted preimage maps to the same class");
                    out.require(evaluate_pairing(r.pin.obstruction.representative(),
                                                 ChainVector{2, Coefficients::mod2, to_int(shifted)}) == e.value,
                                "shifted preimage gives the same value");
                }
    }
    ++suites;

    // assemble_extension(H, 0) = H + Z/2
    {
        const long long orders[] = {2, 3, 4, 6, 8, 12};
        for (int trial = 0; trial < 100; ++trial) {
            std::size_t n = rng() % 4;
            std::vector<long long> t;
            for (std::size_t i = 0; i < n; ++i)
                t.push_back(orders[rng() % 6]);
            SparseIntMatrix diag(n, n), with_u(n + 1, n + 1);
            for (std::size_t i = 0; i < n; ++i) {
                diag.set(i, i, Integer(t[i]));
                with_u.set(i, i, Integer(t[i]));
            }
            with_u.set(n, n, Integer(2));
            PresentedGroup h = group_from_presentation(diag);
            h.free_rank = rng() % 3;
            PresentedGroup expected = group_from_presentation(with_u);
            expected.free_rank = h.free_rank;
            out.require(assemble_extension(h, std::vector<int>(h.torsion.size(), 0)).isomorphic_to(expected),
                        "split extension of " + h.to_string());
        }
    }
    ++suites;

    // Smith normal form against gcds of k x k minors on 500 random matrices
    {
        std::uniform_int_distribution<std::size_t> dim(1, 8);
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t rows = dim(rng), cols = dim(rng);
            std::uniform_int_distribution<int> value(-6, 6);
            std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
            for (auto& row : m)
                for (auto& v : row)
                    v = (rng() % 3) ? value(rng) : 0;
            auto d = smith_normal_form(IntMatrix::from_rows(m)).invariant_factors();
            Integer prefix(1);
            for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
                Integer g(0);
                for_each_subset(rows, k, [&](const std::vector<std::size_t>& rs) {
                    for_each_subset(cols, k, [&](const std::vector<std::size_t>& cs) {
                        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
                        for (std::size_t i = 0; i < k; ++i)
                            for (std::size_t j = 0; j < k; ++j)
                                sub[i][j] = Integer(m[rs[i]][cs[j]]);
                        g = Integer::gcd(g, determinant(sub));
                    });
                });
                if (k <= d.size()) {
                    prefix *= d[k - 1];
                    out.require(prefix == g, "SNF minors trial " + std::to_string(trial));
                } else {
                    out.require(g.is_zero(), "SNF rank trial " + std::to_string(trial));
                }
            }
        }
    }
    ++suites;

    out.detail << suites << " property suites";
}

void determinism(Outcome& out)
{
    const unsigned saved = thread_count();
    for (const char* name : {"RP4", "RP5", "T4"}) {
        std::string first;
        for (unsigned threads : {1U, 4U}) {
            set_thread_count(threads);
            CohomotopyReport r = compute_F1(complex_for(name).base());
            std::string json = render_json(r, ReportMeta{name, "", false});
            if (first.empty())
                first = json;
            else
                out.require(json == first, std::string(name) + " differs across thread counts");
        }
        out.detail << name << " identical; ";
    }
    set_thread_count(saved);
}

}  // namespace

int main(int argc, char** argv)
{
    bool allow_slow = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--allow-slow")
            allow_slow = true;
    if (const char* env = std::getenv("COHOMOTOPY_ALLOW_SLOW"); env && std::string(env) == "1")
        allow_slow = true;

    const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
        {"projective spaces RP^4..RP^7", [&](Outcome& o) { projective_spaces(o, allow_slow); }},
        {"Stiefel-Whitney classes of RP^4, RP^5 (RP^6, RP^7 when slow)", stiefel_whitney_truth},
        {"H_1(RP^4; o_X) = 0 and F1(RP^4) = 0", twisted_h1_of_rp4},
        {"type and order agree with the Sq^2 sequence", crosscheck_equivalence},
        {"F1 of S^4, S^3xS^1, T^4, S^2xS^2, CP^2", derived_values},
        {"property suites", property_suites},
        {"reports identical across thread counts", determinism},
    };

    int failed = 0;
    int index = 1;
    for (const auto& [title, run] : criteria) {
        Outcome o;
        auto start = Clock::now();
        try {
            run(o);
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << "[exception: " << e.what() << "]";
        }
        std::cout << (o.passed ? "PASS" : "FAIL") << "  " << index++ << ". " << title << " (" << std::fixed;
        std::cout.precision(1);
        std::cout << seconds_since(start) << " s): " << o.detail.str() << std::endl;
        failed += o.passed ? 0 : 1;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all passed")
              << std::endl;
    return failed ? 1 : 0;
}
