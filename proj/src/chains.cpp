#include "cohomotopy/chains.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cohomotopy/parallel.hpp"

namespace cohomotopy {

namespace {

IntVector to_int(const Z2Vector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i])
            out[i] = Integer(1);
    return out;
}

Z2Vector to_bits(const IntVector& v)
{
    Z2Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = static_cast<std::uint8_t>(v[i].mod2());
    return out;
}

int edge_twist(const SimplicialComplex& k, int degree, std::size_t i, const OrientationSystem* o)
{
    if (!o)
        return 0;
    return o->cocycle()[k.subface(degree, i, 0b11U)];
}

void check_degree(const SimplicialComplex& k, int degree, const char* what)
{
    if (degree < 1 || degree > k.dimension())
        throw std::out_of_range(std::string(what) + ": degree " + std::to_string(degree) + " out of range");
}

SparseIntMatrix build_boundary(const SimplicialComplex& k, int degree, const OrientationSystem* o, bool mod2)
{
    check_degree(k, degree, "boundary_matrix");
    const std::size_t n = k.count(degree);
    SparseIntMatrix m(k.count(degree - 1), n);
    std::vector<std::pair<std::size_t, int>> col;
    for (std::size_t i = 0; i < n; ++i) {
        col.clear();
        for (int j = 0; j <= degree; ++j) {
            int sign = (j % 2 == 0) ? 1 : -1;
            if (j == 0 && edge_twist(k, degree, i, o))
                sign = -sign;
            col.emplace_back(k.face(degree, i, j), mod2 ? 1 : sign);
        }
        std::sort(col.begin(), col.end());
        for (const auto& [r, v] : col)
            m.push_back(r, i, Integer(v));
    }
    return m;
}

/// Greedy basis of vectors modulo a growing span, kept in echelon form.
class XorBasis {
public:
    explicit XorBasis(std::size_t n) : n_(n) {}
    bool insert(Z2Vector v)
    {
        for (const auto& [p, b] : rows_)
            if (v[p])
                for (std::size_t i = 0; i < n_; ++i)
                    v[i] ^= b[i];
        for (std::size_t i = 0; i < n_; ++i)
            if (v[i]) {
                rows_.emplace_back(i, std::move(v));
                return true;
            }
        return false;
    }

private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, Z2Vector>> rows_;
};

IntMatrix dense(const SparseIntMatrix& m, std::size_t rows, std::size_t cols)
{
    if (m.rows() == rows && m.cols() == cols)
        return IntMatrix::from_sparse(m);
    return IntMatrix(rows, cols);
}

}  // namespace

const char* to_string(Coefficients c)
{
    switch (c) {
    case Coefficients::integer:
        return "Z";
    case Coefficients::mod2:
        return "Z2";
    case Coefficients::twisted:
        return "o_X";
    }
    return "?";
}

bool Z2Cochain::is_zero() const
{
    for (auto b : values)
        if (b)
            return false;
    return true;
}

Z2Cochain operator+(const Z2Cochain& a, const Z2Cochain& b)
{
    if (a.degree != b.degree || a.values.size() != b.values.size())
        throw std::invalid_argument("cochain sum: degree mismatch");
    Z2Cochain out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] ^= b.values[i];
    return out;
}

// ---------------------------------------------------------------------------

OrientationSystem::OrientationSystem(const SimplicialComplex& complex, Z2Vector z)
    : complex_(&complex), z_(std::move(z))
{
    if (z_.size() != complex.count(1))
        throw ComplexError("orientation system: cochain has wrong length");
    if (complex.dimension() >= 2) {
        Z2Cochain dz = coboundary(complex, Z2Cochain{1, z_});
        if (!dz.is_zero())
            throw ComplexError("orientation system: z is not a cocycle");
    }
}

OrientationSystem OrientationSystem::trivial(const SimplicialComplex& complex)
{
    return OrientationSystem(complex, Z2Vector(complex.count(1), 0));
}

bool OrientationSystem::is_trivial() const
{
    for (auto b : z_)
        if (b)
            return false;
    return true;
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int degree, Coefficients system)
{
    if (system == Coefficients::twisted)
        throw std::invalid_argument("boundary_matrix: twisted coefficients need an orientation system");
    return build_boundary(k, degree, nullptr, system == Coefficients::mod2);
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int degree, const OrientationSystem& o)
{
    if (&o.complex() != &k)
        throw std::invalid_argument("boundary_matrix: orientation system of another complex");
    return build_boundary(k, degree, &o, false);
}

IntVector apply_boundary(const SimplicialComplex& k, int degree, const IntVector& chain, const OrientationSystem* o)
{
    check_degree(k, degree, "apply_boundary");
    if (chain.size() != k.count(degree))
        throw std::invalid_argument("apply_boundary: chain has wrong length");
    IntVector out(k.count(degree - 1));
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i].is_zero())
            continue;
        for (int j = 0; j <= degree; ++j) {
            bool negative = (j % 2 == 1);
            if (j == 0 && edge_twist(k, degree, i, o))
                negative = !negative;
            auto& slot = out[k.face(degree, i, j)];
            if (negative)
                slot -= chain[i];
            else
                slot += chain[i];
        }
    }
    return out;
}

Z2Cochain coboundary(const SimplicialComplex& k, const Z2Cochain& x)
{
    const int p = x.degree;
    if (p < 0 || p >= k.dimension())
        throw std::out_of_range("coboundary: degree out of range");
    if (x.values.size() != k.count(p))
        throw std::invalid_argument("coboundary: cochain has wrong length");
    Z2Cochain out{p + 1, Z2Vector(k.count(p + 1), 0)};
    parallel_for(0, out.values.size(), [&](std::size_t i) {
        std::uint8_t acc = 0;
        for (int j = 0; j <= p + 1; ++j)
            acc ^= x.values[k.face(p + 1, i, j)];
        out.values[i] = acc;
    });
    return out;
}

IntVector coboundary(const SimplicialComplex& k, int degree, const IntVector& x)
{
    if (degree < 0 || degree >= k.dimension())
        throw std::out_of_range("coboundary: degree out of range");
    if (x.size() != k.count(degree))
        throw std::invalid_argument("coboundary: cochain has wrong length");
    IntVector out(k.count(degree + 1));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int j = 0; j <= degree + 1; ++j) {
            const Integer& v = x[k.face(degree + 1, i, j)];
            if (j % 2 == 0)
                out[i] += v;
            else
                out[i] -= v;
        }
    return out;
}

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(const SimplicialComplex& k) : complex_(&k)
{
    build();
}

ChainComplex::ChainComplex(const SimplicialComplex& k, const OrientationSystem& o)
    : complex_(&k), orientation_(o), twisted_(true)
{
    if (&o.complex() != &k)
        throw std::invalid_argument("ChainComplex: orientation system of another complex");
    build();
}

void ChainComplex::build()
{
    const int d = dimension();
    std::vector<std::size_t> sizes;
    for (int k = 0; k <= d; ++k)
        sizes.push_back(complex_->count(k));
    reduced_ = ReducedComplex(sizes, [this](int k) {
        return twisted_ ? boundary_matrix(*complex_, k, *orientation_) : boundary_matrix(*complex_, k);
    });

    // Dense reduced boundaries; index k holds d'_k, with zero maps at 0 and d+1.
    std::vector<IntMatrix> bnd(static_cast<std::size_t>(d + 2));
    for (int k = 0; k <= d + 1; ++k) {
        std::size_t rows = reduced_.reduced_size(k - 1);
        std::size_t cols = reduced_.reduced_size(k);
        bnd[static_cast<std::size_t>(k)] = dense(reduced_.boundary(k), rows, cols);
    }
    for (int k = 0; k <= d; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        homology_.push_back(integral_level(bnd[ku], bnd[ku + 1], false, k));
        cohomology_.push_back(integral_level(bnd[ku + 1].transpose(), bnd[ku].transpose(), true, k));
        if (!twisted_) {
            BitMatrix out = BitMatrix::from_sparse(bnd[ku].to_sparse());
            BitMatrix in = BitMatrix::from_sparse(bnd[ku + 1].to_sparse());
            homology2_.push_back(mod2_level(out, in, false, k));
            cohomology2_.push_back(mod2_level(in.transpose(), out.transpose(), true, k));
        }
    }
}

ChainComplex::Integral ChainComplex::integral_level(const IntMatrix& out_map, const IntMatrix& in_map,
                                                    bool cohomological, int k) const
{
    Integral level;
    SmithDecomposition snf = smith_normal_form(out_map);
    level.rank = snf.rank;
    level.V_inverse = snf.V_inverse;
    const std::size_t n = out_map.cols();
    const std::size_t m = n - level.rank;

    IntMatrix moved = snf.V_inverse * in_map;
    SparseIntMatrix relations(in_map.cols(), m);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < in_map.cols(); ++r)
            if (!moved(level.rank + c, r).is_zero())
                relations.set(r, c, moved(level.rank + c, r));
    level.quotient = cokernel(relations);

    level.group.free_rank = level.quotient.group.free_rank;
    level.group.torsion = level.quotient.group.torsion;
    for (const auto& g : level.quotient.group.generators) {
        IntVector x(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < m; ++c)
                if (!g[c].is_zero())
                    x[i] += snf.V(i, level.rank + c) * g[c];
        level.group.generators.push_back(cohomological ? reduced_.pull_cochain(k, x) : reduced_.lift_chain(k, x));
    }
    return level;
}

ChainComplex::Mod2 ChainComplex::mod2_level(const BitMatrix& out_map, const BitMatrix& in_map, bool cohomological,
                                            int k) const
{
    Mod2 level;
    const std::size_t n = out_map.cols();
    XorBasis span(n);
    for (std::size_t c = 0; c < in_map.cols(); ++c) {
        Z2Vector v(n);
        for (std::size_t r = 0; r < n; ++r)
            v[r] = in_map.get(r, c);
        span.insert(std::move(v));
    }
    std::vector<Z2Vector> chosen;
    for (auto& v : kernel_mod2(out_map))
        if (span.insert(v))
            chosen.push_back(std::move(v));

    level.boundary_columns = in_map.cols();
    level.span = BitMatrix(n, in_map.cols() + chosen.size());
    for (std::size_t c = 0; c < in_map.cols(); ++c)
        for (std::size_t r = 0; r < n; ++r)
            if (in_map.get(r, c))
                level.span.set(r, c, true);
    for (std::size_t j = 0; j < chosen.size(); ++j) {
        for (std::size_t r = 0; r < n; ++r)
            if (chosen[j][r])
                level.span.set(r, in_map.cols() + j, true);
        IntVector x = to_int(chosen[j]);
        level.basis.push_back(
            to_bits(cohomological ? reduced_.pull_cochain(k, x, true) : reduced_.lift_chain(k, x, true)));
    }
    return level;
}

IntVector ChainComplex::integral_coordinates(const Integral& level, const IntVector& reduced) const
{
    const std::size_t n = level.V_inverse.rows();
    IntVector y(n - level.rank);
    for (std::size_t r = level.rank; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (!reduced[c].is_zero())
                y[r - level.rank] += level.V_inverse(r, c) * reduced[c];
    return level.quotient.coordinates(y);
}

Z2Vector ChainComplex::mod2_coordinates(const Mod2& level, const Z2Vector& reduced) const
{
    auto sol = solve_mod2(level.span, reduced);
    if (!sol)
        throw std::invalid_argument("mod-2 coordinates: vector is not a cycle");
    return Z2Vector(sol->begin() + static_cast<std::ptrdiff_t>(level.boundary_columns), sol->end());
}

namespace {
void check_level(int k, int d, const char* what)
{
    if (k < 0 || k > d)
        throw std::out_of_range(std::string(what) + ": degree " + std::to_string(k) + " out of range");
}
}  // namespace

const PresentedGroup& ChainComplex::homology(int k) const
{
    check_level(k, dimension(), "homology");
    return homology_[static_cast<std::size_t>(k)].group;
}

const PresentedGroup& ChainComplex::cohomology(int k) const
{
    check_level(k, dimension(), "cohomology");
    return cohomology_[static_cast<std::size_t>(k)].group;
}

IntVector ChainComplex::homology_coordinates(int k, const IntVector& cycle) const
{
    check_level(k, dimension(), "homology_coordinates");
    return integral_coordinates(homology_[static_cast<std::size_t>(k)], reduced_.project_chain(k, cycle));
}

IntVector ChainComplex::cohomology_coordinates(int k, const IntVector& cocycle) const
{
    check_level(k, dimension(), "cohomology_coordinates");
    return integral_coordinates(cohomology_[static_cast<std::size_t>(k)], reduced_.push_cochain(k, cocycle));
}

bool ChainComplex::is_boundary(int k, const IntVector& cycle) const
{
    for (const auto& c : homology_coordinates(k, cycle))
        if (!c.is_zero())
            return false;
    return true;
}

void ChainComplex::require_untwisted() const
{
    if (twisted_)
        throw std::logic_error("mod-2 data is only kept on the untwisted complex");
}

const std::vector<Z2Vector>& ChainComplex::homology_basis_mod2(int k) const
{
    require_untwisted();
    check_level(k, dimension(), "homology_basis_mod2");
    return homology2_[static_cast<std::size_t>(k)].basis;
}

const std::vector<Z2Vector>& ChainComplex::cohomology_basis_mod2(int k) const
{
    require_untwisted();
    check_level(k, dimension(), "cohomology_basis_mod2");
    return cohomology2_[static_cast<std::size_t>(k)].basis;
}

Z2Vector ChainComplex::homology_coordinates_mod2(int k, const Z2Vector& cycle) const
{
    require_untwisted();
    check_level(k, dimension(), "homology_coordinates_mod2");
    return mod2_coordinates(homology2_[static_cast<std::size_t>(k)],
                            to_bits(reduced_.project_chain(k, to_int(cycle), true)));
}

Z2Vector ChainComplex::cohomology_coordinates_mod2(int k, const Z2Vector& cocycle) const
{
    require_untwisted();
    check_level(k, dimension(), "cohomology_coordinates_mod2");
    return mod2_coordinates(cohomology2_[static_cast<std::size_t>(k)],
                            to_bits(reduced_.push_cochain(k, to_int(cocycle), true)));
}

std::optional<Z2Vector> ChainComplex::coboundary_witness_mod2(int k, const Z2Vector& w) const
{
    require_untwisted();
    check_level(k, dimension(), "coboundary_witness_mod2");
    IntVector wi = to_int(w);
    Z2Vector reduced = to_bits(reduced_.push_cochain(k, wi, true));
    if (k == 0) {
        for (auto b : w)
            if (b)
                return std::nullopt;
        return Z2Vector{};
    }
    // delta'_{k-1} = (d'_k)^T
    BitMatrix delta = BitMatrix::from_sparse(reduced_.boundary(k)).transpose();
    auto y = solve_mod2(delta, reduced);
    if (!y)
        return std::nullopt;
    return to_bits(reduced_.coboundary_preimage(k, wi, to_int(*y), true));
}

// ---------------------------------------------------------------------------

ChainVector fundamental_class_mod2(const SimplicialComplex& k)
{
    const int d = k.dimension();
    ChainVector c{d, Coefficients::mod2, IntVector(k.count(d), Integer(1))};
    if (d >= 1) {
        IntVector b = apply_boundary(k, d, c.values);
        for (const auto& v : b)
            if (v.mod2())
                throw ComplexError("fundamental_class_mod2: the facet sum is not a mod-2 cycle");
    }
    return c;
}

ChainVector twisted_fundamental_class(const SimplicialComplex& k, const OrientationSystem& o)
{
    const int d = k.dimension();
    if (d < 1)
        throw ComplexError("twisted_fundamental_class: dimension below 1");
    const std::size_t n = k.count(d);
    // ridge -> incident (facet, coefficient)
    std::vector<std::vector<std::pair<std::size_t, int>>> ridges(k.count(d - 1));
    for (std::size_t f = 0; f < n; ++f)
        for (int j = 0; j <= d; ++j) {
            int sign = (j % 2 == 0) ? 1 : -1;
            if (j == 0 && edge_twist(k, d, f, &o))
                sign = -sign;
            ridges[k.face(d, f, j)].emplace_back(f, sign);
        }
    std::vector<int> s(n, 0);
    std::vector<std::size_t> queue{0};
    s[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t f = queue[head];
        for (int j = 0; j <= d; ++j) {
            const auto& inc = ridges[k.face(d, f, j)];
            if (inc.size() != 2)
                throw ComplexError("twisted_fundamental_class: ridge not shared by exactly two facets");
            const auto& mine = inc[0].first == f ? inc[0] : inc[1];
            const auto& other = inc[0].first == f ? inc[1] : inc[0];
            int want = -s[f] * mine.second * other.second;
            if (s[other.first] == 0) {
                s[other.first] = want;
                queue.push_back(other.first);
            } else if (s[other.first] != want) {
                throw ComplexError("twisted_fundamental_class: kernel rank 0, the local system does not match w1");
            }
        }
    }
    if (queue.size() != n)
        throw ComplexError("twisted_fundamental_class: complex is not strongly connected");
    ChainVector c{d, Coefficients::twisted, IntVector(n)};
    for (std::size_t f = 0; f < n; ++f)
        c.values[f] = Integer(s[f]);
    return c;
}

Z2Cochain bockstein_sq1(const SimplicialComplex& k, const Z2Cochain& x)
{
    if (x.degree + 1 > k.dimension()) {
        if (x.degree != k.dimension() || x.values.size() != k.count(x.degree))
            throw std::invalid_argument("bockstein_sq1: degree out of range");
        return Z2Cochain{x.degree + 1, {}};
    }
    if (!coboundary(k, x).is_zero())
        throw std::invalid_argument("bockstein_sq1: input is not a cocycle");
    IntVector d = coboundary(k, x.degree, to_int(x.values));
    Z2Cochain out{x.degree + 1, Z2Vector(d.size(), 0)};
    for (std::size_t i = 0; i < d.size(); ++i) {
        Integer half = Integer::divexact(d[i], Integer(2));
        out.values[i] = static_cast<std::uint8_t>(half.mod2());
    }
    return out;
}

ChainVector twisted_bockstein_beta1(const SimplicialComplex& k, const OrientationSystem& o, const Z2Vector& c)
{
    if (c.size() != k.count(2))
        throw std::invalid_argument("twisted_bockstein_beta1: chain has wrong length");
    IntVector d = apply_boundary(k, 2, to_int(c), &o);
    ChainVector out{1, Coefficients::twisted, IntVector(d.size())};
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].mod2())
            throw std::invalid_argument("twisted_bockstein_beta1: input is not a mod-2 cycle");
        out.values[i] = Integer::divexact(d[i], Integer(2));
    }
    return out;
}

int evaluate_pairing(const Z2Cochain& x, const ChainVector& c)
{
    if (x.degree != c.degree || x.values.size() != c.values.size())
        throw std::invalid_argument("evaluate_pairing: degree mismatch");
    int acc = 0;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        if (x.values[i])
            acc ^= c.values[i].mod2();
    return acc;
}

}  // namespace cohomotopy
