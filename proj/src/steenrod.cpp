#include "cohomotopy/steenrod.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "cohomotopy/parallel.hpp"

namespace cohomotopy {

namespace {

std::uint32_t interval_mask(int a, int b)
{
    std::uint32_t m = 0;
    for (int t = a; t <= b; ++t)
        m |= std::uint32_t{1} << t;
    return m;
}

using Terms = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

const Terms& cached_terms(int n, int p, int q, int i)
{
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, Terms> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, p, q, i);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, cup_i_terms(n, p, q, i)).first;
    return it->second;
}

void check_cochain(const SimplicialComplex& k, const Z2Cochain& x, const char* what)
{
    if (x.degree < 0 || x.degree > k.dimension() || x.values.size() != k.count(x.degree))
        throw std::invalid_argument(std::string(what) + ": cochain does not belong to this complex");
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> cup_i_terms(int n, int p, int q, int i)
{
    Terms out;
    if (i < 0 || n < 0 || n > 30 || i + 1 > n + 1)
        return out;
    // Junctions 0 <= j_0 < ... < j_i <= n split [0, n] into i+2 blocks
    // sharing their endpoints; x takes the even blocks, y the odd ones.
    std::vector<int> j(static_cast<std::size_t>(i + 1));
    for (int t = 0; t <= i; ++t)
        j[static_cast<std::size_t>(t)] = t;
    while (true) {
        std::uint32_t mx = 0, my = 0;
        int start = 0;
        for (int b = 0; b <= i + 1; ++b) {
            int end = (b <= i) ? j[static_cast<std::size_t>(b)] : n;
            std::uint32_t block = interval_mask(start, end);
            if (b % 2 == 0)
                mx |= block;
            else
                my |= block;
            start = end;
        }
        if (std::popcount(mx) == p + 1 && std::popcount(my) == q + 1)
            out.emplace_back(mx, my);
        int t = i;
        while (t >= 0 && j[static_cast<std::size_t>(t)] == n - (i - t))
            --t;
        if (t < 0)
            break;
        ++j[static_cast<std::size_t>(t)];
        for (int s = t + 1; s <= i; ++s)
            j[static_cast<std::size_t>(s)] = j[static_cast<std::size_t>(s - 1)] + 1;
    }
    return out;
}

Z2Cochain cup_i(const SimplicialComplex& k, const Z2Cochain& x, const Z2Cochain& y, int i)
{
    check_cochain(k, x, "cup_i");
    check_cochain(k, y, "cup_i");
    if (i < 0)
        throw std::invalid_argument("cup_i: negative index");
    const int n = x.degree + y.degree - i;
    Z2Cochain out{n, {}};
    if (n < 0 || n > k.dimension())
        return out;
    out.values.assign(k.count(n), 0);
    const Terms& terms = cached_terms(n, x.degree, y.degree, i);
    if (terms.empty())
        return out;
    parallel_for(0, out.values.size(), [&](std::size_t s) {
        std::uint8_t acc = 0;
        for (const auto& [mx, my] : terms) {
            if (!x.values[k.subface(n, s, mx)])
                continue;
            acc ^= y.values[k.subface(n, s, my)];
        }
        out.values[s] = acc;
    });
    return out;
}

Z2Cochain cup(const SimplicialComplex& k, const Z2Cochain& x, const Z2Cochain& y)
{
    return cup_i(k, x, y, 0);
}

CocycleClass::CocycleClass(const SimplicialComplex& k, Z2Cochain x) : rep_(std::move(x))
{
    check_cochain(k, rep_, "CocycleClass");
    if (rep_.degree < k.dimension() && !coboundary(k, rep_).is_zero())
        throw std::invalid_argument("CocycleClass: representative is not a cocycle");
}

CocycleClass sq(const SimplicialComplex& k, int power, const CocycleClass& x)
{
    const int p = x.degree();
    if (power < 0)
        throw std::invalid_argument("sq: negative power");
    const int target = p + power;
    if (power > p || target > k.dimension())
        return CocycleClass(k, Z2Cochain{std::min(target, k.dimension()),
                                         Z2Vector(k.count(std::min(target, k.dimension())), 0)});
    return CocycleClass(k, cup_i(k, x.representative(), x.representative(), p - power));
}

int evaluate_top(const SimplicialComplex& k, const Z2Cochain& x)
{
    if (x.degree != k.dimension() || x.values.size() != k.count(x.degree))
        throw std::invalid_argument("evaluate_top: not a top-degree cochain");
    int acc = 0;
    for (auto b : x.values)
        acc ^= b;
    return acc;
}

bool same_class(const ChainComplex& c, const Z2Cochain& x, const Z2Cochain& y)
{
    return c.coboundary_witness_mod2(x.degree, (x + y).values).has_value();
}

WuClasses wu_classes(const ChainComplex& c)
{
    const SimplicialComplex& k = c.complex();
    const int d = k.dimension();
    if (d < 4)
        throw std::invalid_argument("wu_classes: dimension below 4");
    std::vector<CocycleClass> out;
    for (int power = 1; power <= 2; ++power) {
        const auto& h = c.cohomology_basis_mod2(power);
        const auto& xs = c.cohomology_basis_mod2(d - power);
        if (h.size() != xs.size())
            throw std::runtime_error("wu_classes: H^k and H^{d-k} have different ranks; pairing degenerate");
        const std::size_t m = h.size();
        // Row j: <h_i u x_j, [X]> over i, right-hand side <Sq^k x_j, [X]>.
        BitMatrix pairing(m, m);
        Z2Vector rhs(m, 0);
        for (std::size_t jx = 0; jx < m; ++jx) {
            CocycleClass x(k, Z2Cochain{d - power, xs[jx]});
            for (std::size_t ih = 0; ih < m; ++ih)
                if (evaluate_top(k, cup(k, Z2Cochain{power, h[ih]}, x.representative())))
                    pairing.set(jx, ih, true);
            rhs[jx] = static_cast<std::uint8_t>(evaluate_top(k, sq(k, power, x).representative()));
        }
        if (rank_mod2(pairing) != m)
            throw std::runtime_error("wu_classes: duality pairing is degenerate");
        auto coeff = solve_mod2(pairing, rhs);
        if (!coeff)
            throw std::logic_error("wu_classes: inconsistent system");
        Z2Cochain v{power, Z2Vector(k.count(power), 0)};
        for (std::size_t ih = 0; ih < m; ++ih)
            if ((*coeff)[ih])
                v = v + Z2Cochain{power, h[ih]};
        CocycleClass vc(k, std::move(v));
        for (std::size_t jx = 0; jx < m; ++jx) {
            Z2Cochain x{d - power, xs[jx]};
            if (evaluate_top(k, cup(k, vc.representative(), x)) != rhs[jx])
                throw std::logic_error("wu_classes: duality check failed after solving");
        }
        out.push_back(std::move(vc));
    }
    return WuClasses{out[0], out[1]};
}

StiefelWhitney stiefel_whitney(const ChainComplex& c, const WuClasses& wu)
{
    const SimplicialComplex& k = c.complex();
    Z2Cochain w2 = cup(k, wu.v1.representative(), wu.v1.representative()) + wu.v2.representative();
    return StiefelWhitney{wu.v1, CocycleClass(k, std::move(w2))};
}

PinMinusObstruction pin_minus_obstruction(const ChainComplex& c, const StiefelWhitney& sw)
{
    const SimplicialComplex& k = c.complex();
    Z2Cochain o = cup(k, sw.w1.representative(), sw.w1.representative()) + sw.w2.representative();
    PinMinusObstruction out;
    out.witness = c.coboundary_witness_mod2(2, o.values);
    out.vanishes = out.witness.has_value();
    out.obstruction = CocycleClass(k, std::move(o));
    return out;
}

}  // namespace cohomotopy
