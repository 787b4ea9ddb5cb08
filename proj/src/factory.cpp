#include "cohomotopy/factory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cohomotopy {

FacetComplex sphere(int d)
{
    if (d < 1)
        throw std::invalid_argument("sphere: dimension must be at least 1");
    const int n = d + 2;
    std::vector<Simplex> facets;
    for (int skip = n - 1; skip >= 0; --skip) {
        Simplex f;
        for (int v = 0; v < n; ++v)
            if (v != skip)
                f.push_back(v);
        facets.push_back(std::move(f));
    }
    return FacetComplex(static_cast<std::size_t>(n), std::move(facets), "sphere:" + std::to_string(d));
}

FacetComplex circle(int m)
{
    if (m < 3)
        throw std::invalid_argument("circle: need at least 3 vertices");
    std::vector<Simplex> facets;
    for (int i = 0; i < m; ++i) {
        int a = i, b = (i + 1) % m;
        facets.push_back({std::min(a, b), std::max(a, b)});
    }
    return FacetComplex(static_cast<std::size_t>(m), std::move(facets), "circle:" + std::to_string(m));
}

FacetComplex barycentric_subdivision(const FacetComplex& k)
{
    const int d = k.dimension();
    std::vector<SimplexIndex> faces;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (int j = 0; j <= d; ++j) {
        faces.push_back(skeleton(k, j));
        offset.push_back(total);
        total += faces.back().size();
    }

    std::vector<Simplex> facets;
    std::vector<int> perm(static_cast<std::size_t>(d + 1));
    Simplex flag(static_cast<std::size_t>(d + 1));
    Simplex sub;
    for (const auto& f : k.facets()) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (int j = 0; j <= d; ++j) {
                sub.assign(1, f[static_cast<std::size_t>(perm[0])]);
                for (int t = 1; t <= j; ++t)
                    sub.push_back(f[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])]);
                std::sort(sub.begin(), sub.end());
                auto pos = faces[static_cast<std::size_t>(j)].find(sub);
                flag[static_cast<std::size_t>(j)] = static_cast<Vertex>(offset[static_cast<std::size_t>(j)] + *pos);
            }
            facets.push_back(flag);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::string name = k.name().empty() ? "" : "subdivide(" + k.name() + ")";
    return FacetComplex(total, std::move(facets), name);
}

FacetComplex cross_polytope_sphere(int d)
{
    if (d < 1)
        throw std::invalid_argument("cross_polytope_sphere: dimension must be at least 1");
    const int n = d + 1;
    std::vector<Simplex> facets;
    for (std::uint32_t signs = 0; signs < (1U << n); ++signs) {
        Simplex f;
        for (int i = 0; i < n; ++i)
            f.push_back(2 * i + static_cast<int>((signs >> i) & 1U));
        facets.push_back(std::move(f));
    }
    return FacetComplex(static_cast<std::size_t>(2 * n), std::move(facets), "cross_polytope:" + std::to_string(d));
}

FacetComplex antipodal_quotient(int d)
{
    FacetComplex cross = cross_polytope_sphere(d);
    FacetComplex sd = barycentric_subdivision(cross);

    // Recover the face of the cross-polytope behind each subdivision vertex.
    std::vector<Simplex> face_of;
    for (int j = 0; j <= d; ++j) {
        SimplexIndex s = skeleton(cross, j);
        for (std::size_t i = 0; i < s.size(); ++i)
            face_of.emplace_back(s[i].begin(), s[i].end());
    }
    std::map<Simplex, std::size_t> id_of;
    for (std::size_t i = 0; i < face_of.size(); ++i)
        id_of.emplace(face_of[i], i);

    // Orbit representative: the face whose smallest coordinate carries a + sign.
    std::vector<std::size_t> rep(face_of.size());
    for (std::size_t i = 0; i < face_of.size(); ++i) {
        const Simplex& f = face_of[i];
        if (f.front() % 2 == 0) {
            rep[i] = i;
        } else {
            Simplex g;
            for (Vertex v : f)
                g.push_back(v ^ 1);
            rep[i] = id_of.at(g);
        }
    }
    std::vector<Vertex> label(face_of.size(), -1);
    Vertex next = 0;
    for (std::size_t i = 0; i < face_of.size(); ++i)
        if (rep[i] == i)
            label[i] = next++;

    std::vector<Simplex> facets;
    for (const auto& f : sd.facets()) {
        Simplex g;
        for (Vertex v : f)
            g.push_back(label[rep[static_cast<std::size_t>(v)]]);
        std::sort(g.begin(), g.end());
        facets.push_back(std::move(g));
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return FacetComplex(static_cast<std::size_t>(next), std::move(facets), "rp:" + std::to_string(d));
}

std::size_t antipodal_quotient_size(int d)
{
    if (d < 1)
        throw std::invalid_argument("antipodal_quotient_size: dimension must be at least 1");
    // Chains S_0 < ... < S_k = F of nonempty subsets of an n-set correspond
    // to surjections onto k+1 ordered blocks: (k+1)! S(n, k+1).
    const int n_max = d + 1;
    std::vector<std::vector<double>> stirling(static_cast<std::size_t>(n_max + 1),
                                              std::vector<double>(static_cast<std::size_t>(n_max + 1), 0));
    stirling[0][0] = 1;
    for (int n = 1; n <= n_max; ++n)
        for (int k = 1; k <= n; ++k)
            stirling[n][k] = k * stirling[n - 1][k] + stirling[n - 1][k - 1];
    double total = 0;
    double binom = 1;  // C(d+1, m+1)
    for (int m = 0; m <= d; ++m) {
        binom = binom * (d + 1 - m) / (m + 1);
        double faces = binom * std::ldexp(1.0, m + 1);
        double chains = 0, fact = 1;
        for (int k = 0; k <= m; ++k) {
            fact *= (k + 1);
            chains += fact * stirling[m + 1][k + 1];
        }
        total += faces * chains;
    }
    return static_cast<std::size_t>(total / 2 + 0.5);
}

FacetComplex product(const FacetComplex& k, const FacetComplex& l)
{
    const int p = k.dimension();
    const int q = l.dimension();
    const auto width = static_cast<Vertex>(l.vertex_count());
    std::vector<Simplex> facets;
    // A staircase is a sequence of p+q moves, p of them in the first factor.
    std::vector<int> moves(static_cast<std::size_t>(p + q), 0);
    std::fill(moves.begin() + q, moves.end(), 1);
    std::vector<std::vector<int>> paths;
    do {
        paths.push_back(moves);
    } while (std::next_permutation(moves.begin(), moves.end()));

    for (const auto& a : k.facets())
        for (const auto& b : l.facets())
            for (const auto& path : paths) {
                std::size_t i = 0, j = 0;
                Simplex f{a[0] * width + b[0]};
                for (int step : path) {
                    if (step)
                        ++i;
                    else
                        ++j;
                    f.push_back(a[i] * width + b[j]);
                }
                facets.push_back(std::move(f));
            }
    std::string name;
    if (!k.name().empty() && !l.name().empty())
        name = "product(" + k.name() + "," + l.name() + ")";
    return FacetComplex(k.vertex_count() * l.vertex_count(), std::move(facets), name);
}

// ---------------------------------------------------------------------------
// GeneratorSpec

namespace {

class SpecParser {
public:
    explicit SpecParser(const std::string& text)
    {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c)))
                s_.push_back(c);
    }

    GeneratorSpec parse_all()
    {
        GeneratorSpec spec = parse();
        if (pos_ != s_.size())
            fail("trailing characters");
        return spec;
    }

private:
    GeneratorSpec parse()
    {
        GeneratorSpec spec;
        spec.family = word();
        if (spec.family == "fixture") {
            expect(':');
            std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')')
                ++pos_;
            spec.fixture = s_.substr(start, pos_ - start);
            if (spec.fixture.empty())
                fail("missing fixture name");
        } else if (spec.family == "sphere" || spec.family == "rp" || spec.family == "circle") {
            expect(':');
            spec.parameter = number();
        } else if (spec.family == "product" || spec.family == "subdivide") {
            expect('(');
            spec.children.push_back(parse());
            if (spec.family == "product") {
                expect(',');
                spec.children.push_back(parse());
            }
            expect(')');
        } else {
            fail("unknown family '" + spec.family + "'");
        }
        return spec;
    }

    std::string word()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    int number()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_ || pos_ - start > 6)
            fail("expected a number");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    void expect(char c)
    {
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("generator spec '" + s_ + "': " + what + " at position " +
                                    std::to_string(pos_));
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text)
{
    return SpecParser(text).parse_all();
}

std::string GeneratorSpec::to_string() const
{
    if (family == "fixture")
        return "fixture:" + fixture;
    if (family == "product")
        return "product(" + children.at(0).to_string() + "," + children.at(1).to_string() + ")";
    if (family == "subdivide")
        return "subdivide(" + children.at(0).to_string() + ")";
    return family + ":" + std::to_string(parameter);
}

FacetComplex generate(const GeneratorSpec& spec)
{
    FacetComplex out;
    if (spec.family == "sphere")
        out = sphere(spec.parameter);
    else if (spec.family == "rp")
        out = antipodal_quotient(spec.parameter);
    else if (spec.family == "circle")
        out = circle(spec.parameter);
    else if (spec.family == "product")
        out = product(generate(spec.children.at(0)), generate(spec.children.at(1)));
    else if (spec.family == "subdivide")
        out = barycentric_subdivision(generate(spec.children.at(0)));
    else if (spec.family == "fixture")
        out = load_fixture(spec.fixture);
    else
        throw std::invalid_argument("unknown generator family '" + spec.family + "'");
    if (spec.family != "fixture")
        out.set_name(spec.to_string());
    return out;
}

// ---------------------------------------------------------------------------
// Fixtures

std::string fixture_directory()
{
    if (const char* env = std::getenv("COHOMOTOPY_FIXTURES"); env && *env)
        return env;
#ifdef COHOMOTOPY_FIXTURE_DIR
    return COHOMOTOPY_FIXTURE_DIR;
#else
    return "fixtures";
#endif
}

std::vector<std::string> fixture_names()
{
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(fixture_directory(), ec))
        if (entry.path().extension() == ".facets")
            names.push_back(entry.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

FacetComplex load_fixture(const std::string& name)
{
    std::filesystem::path path(name);
    if (path.extension() != ".facets")
        path += ".facets";
    if (!path.is_absolute())
        path = std::filesystem::path(fixture_directory()) / path;
    if (!std::filesystem::exists(path))
        throw ComplexError("fixture '" + name + "' not found in " + fixture_directory());
    FacetComplex k = load_complex_file(path.string());
    k.set_name("fixture:" + path.stem().string());
    return k;
}

}  // namespace cohomotopy
