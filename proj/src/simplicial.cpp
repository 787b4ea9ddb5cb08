#include "cohomotopy/simplicial.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cohomotopy {

namespace {

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string format_simplex(std::span<const Vertex> s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(s[i]);
    }
    return out + "]";
}

/// Visits every (k+1)-subset of positions {0..n-1} as a bitmask, in
/// lexicographic order of the position tuples.
template <typename Fn>
void for_each_subset(int n, int size, Fn&& fn)
{
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    if (size > n || size <= 0)
        return;
    while (true) {
        fn(idx);
        int i = size - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i)
            --i;
        if (i < 0)
            return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// FacetComplex

FacetComplex::FacetComplex(std::size_t vertex_count, std::vector<Simplex> facets, std::string name)
    : vertex_count_(vertex_count), facets_(std::move(facets)), name_(std::move(name))
{
    if (facets_.empty())
        throw ComplexError("complex has no facets");
    const std::size_t width = facets_.front().size();
    if (width == 0)
        throw ComplexError("facets must be nonempty");
    std::vector<char> used(vertex_count_, 0);
    for (const auto& f : facets_) {
        if (f.size() != width)
            throw ComplexError("ragged facet lengths: " + std::to_string(width) + " vs " +
                               std::to_string(f.size()));
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] < 0 || static_cast<std::size_t>(f[i]) >= vertex_count_)
                throw ComplexError("vertex index out of range in facet " + format_simplex(f));
            if (i > 0 && f[i] <= f[i - 1])
                throw ComplexError("facet is not strictly increasing: " + format_simplex(f));
            used[static_cast<std::size_t>(f[i])] = 1;
        }
    }
    std::sort(facets_.begin(), facets_.end());
    auto dup = std::adjacent_find(facets_.begin(), facets_.end());
    if (dup != facets_.end())
        throw ComplexError("duplicate facet " + format_simplex(*dup));
    for (std::size_t v = 0; v < vertex_count_; ++v)
        if (!used[v])
            throw ComplexError("vertex " + std::to_string(v) + " lies in no facet");
    dimension_ = static_cast<int>(width) - 1;
}

FacetComplex load_complex(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<long long>> raw;
    std::string name;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            // A leading comment names the complex.
            if (raw.empty() && name.empty()) {
                auto start = line.find_first_not_of(" \t", first + 1);
                auto end = line.find_last_not_of(" \t\r");
                if (start != std::string::npos && end >= start)
                    name = line.substr(start, end - start + 1);
            }
            continue;
        }
        std::vector<long long> facet;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            long long v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0)
                throw ComplexError("malformed line " + std::to_string(line_no) + ": token '" + tok +
                                   "' is not a non-negative integer");
            facet.push_back(v);
        }
        std::sort(facet.begin(), facet.end());
        if (std::adjacent_find(facet.begin(), facet.end()) != facet.end())
            throw ComplexError("malformed line " + std::to_string(line_no) + ": repeated vertex");
        if (!raw.empty() && raw.front().size() != facet.size())
            throw ComplexError("ragged facet lengths at line " + std::to_string(line_no));
        raw.push_back(std::move(facet));
    }
    if (raw.empty())
        throw ComplexError("empty input: no facets");

    std::set<long long> labels;
    for (const auto& f : raw)
        labels.insert(f.begin(), f.end());
    std::map<long long, Vertex> renumber;
    Vertex next = 0;
    for (long long l : labels)
        renumber[l] = next++;

    std::vector<Simplex> facets;
    facets.reserve(raw.size());
    for (const auto& f : raw) {
        Simplex s;
        s.reserve(f.size());
        for (long long v : f)
            s.push_back(renumber.at(v));
        facets.push_back(std::move(s));
    }
    return FacetComplex(labels.size(), std::move(facets), std::move(name));
}

FacetComplex load_complex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ComplexError("cannot open facet file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_complex(buf.str());
}

std::string write_complex(const FacetComplex& k)
{
    std::string out;
    if (!k.name().empty())
        out += "# " + k.name() + "\n";
    for (const auto& f : k.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(f[i]);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// SimplexIndex

SimplexIndex::SimplexIndex(int degree, std::vector<Vertex> flat) : degree_(degree), data_(std::move(flat)) {}

std::optional<std::size_t> SimplexIndex::find(std::span<const Vertex> simplex) const
{
    if (static_cast<int>(simplex.size()) != degree_ + 1)
        return std::nullopt;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (lex_less((*this)[mid], simplex))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size() && std::ranges::equal((*this)[lo], simplex))
        return lo;
    return std::nullopt;
}

SimplexIndex skeleton(const FacetComplex& k, int degree)
{
    if (degree < 0 || degree > k.dimension())
        throw std::out_of_range("skeleton: degree " + std::to_string(degree) + " out of range [0, " +
                                std::to_string(k.dimension()) + "]");
    const auto width = static_cast<std::size_t>(degree + 1);
    const int n = k.dimension() + 1;
    std::vector<Vertex> all;
    for (const auto& f : k.facets())
        for_each_subset(n, degree + 1, [&](const std::vector<int>& idx) {
            for (int p : idx)
                all.push_back(f[static_cast<std::size_t>(p)]);
        });
    const std::size_t count = all.size() / width;
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    auto span_of = [&](std::size_t i) { return std::span<const Vertex>(all.data() + i * width, width); };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(span_of(a), span_of(b)); });
    std::vector<Vertex> flat;
    flat.reserve(all.size());
    std::span<const Vertex> prev;
    for (std::size_t i : order) {
        auto s = span_of(i);
        if (!prev.empty() && std::ranges::equal(prev, s))
            continue;
        flat.insert(flat.end(), s.begin(), s.end());
        prev = s;
    }
    return SimplexIndex(degree, std::move(flat));
}

// ---------------------------------------------------------------------------
// SimplicialComplex

SimplicialComplex::SimplicialComplex(FacetComplex k) : base_(std::move(k))
{
    const int d = base_.dimension();
    for (int deg = 0; deg <= d; ++deg)
        skeleta_.push_back(skeleton(base_, deg));
    faces_.resize(static_cast<std::size_t>(d + 1));
    Simplex buf;
    for (int deg = 1; deg <= d; ++deg) {
        const auto& cells = skeleta_[static_cast<std::size_t>(deg)];
        const auto& lower = skeleta_[static_cast<std::size_t>(deg - 1)];
        auto& table = faces_[static_cast<std::size_t>(deg)];
        table.resize(cells.size() * static_cast<std::size_t>(deg + 1));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            auto s = cells[i];
            for (int j = 0; j <= deg; ++j) {
                buf.clear();
                for (int p = 0; p <= deg; ++p)
                    if (p != j)
                        buf.push_back(s[static_cast<std::size_t>(p)]);
                auto idx = lower.find(buf);
                if (!idx)
                    throw ComplexError("internal: face lookup failed");
                table[i * static_cast<std::size_t>(deg + 1) + static_cast<std::size_t>(j)] =
                    static_cast<std::uint32_t>(*idx);
            }
        }
    }
}

std::size_t SimplicialComplex::total_simplices() const
{
    std::size_t n = 0;
    for (const auto& s : skeleta_)
        n += s.size();
    return n;
}

std::size_t SimplicialComplex::subface(int k, std::size_t i, std::uint32_t mask) const
{
    int deg = k;
    std::size_t cur = i;
    for (int pos = k; pos >= 0; --pos) {
        if (mask & (std::uint32_t{1} << pos))
            continue;
        cur = face(deg, cur, pos);
        --deg;
    }
    return cur;
}

long long SimplicialComplex::euler_characteristic() const
{
    long long chi = 0;
    for (int k = 0; k <= dimension(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(count(k));
    return chi;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> ValidationReport::messages() const
{
    std::vector<std::string> out;
    if (!dimension_ok)
        out.push_back("dimension " + std::to_string(dimension) + " is below the minimum " +
                      std::to_string(kMinimumDimension));
    for (const auto& r : ridge_violations)
        out.push_back("ridge " + format_simplex(r.ridge) + " lies in " + std::to_string(r.facet_count) +
                      " facet(s), expected 2");
    if (!connected)
        out.push_back("facet adjacency graph has " + std::to_string(components) + " components");
    return out;
}

ValidationReport validate_closed_pseudomanifold(const FacetComplex& k)
{
    ValidationReport report;
    const int d = k.dimension();
    report.dimension = d;
    report.dimension_ok = d >= kMinimumDimension;

    const auto& facets = k.facets();
    DisjointSets sets(facets.size());
    if (d >= 1) {
        // (ridge, facet) incidences sorted by ridge.
        std::vector<std::pair<Simplex, std::size_t>> inc;
        inc.reserve(facets.size() * static_cast<std::size_t>(d + 1));
        for (std::size_t f = 0; f < facets.size(); ++f)
            for (int j = 0; j <= d; ++j) {
                Simplex r;
                for (int p = 0; p <= d; ++p)
                    if (p != j)
                        r.push_back(facets[f][static_cast<std::size_t>(p)]);
                inc.emplace_back(std::move(r), f);
            }
        std::sort(inc.begin(), inc.end());
        for (std::size_t a = 0; a < inc.size();) {
            std::size_t b = a;
            while (b < inc.size() && inc[b].first == inc[a].first)
                ++b;
            for (std::size_t c = a + 1; c < b; ++c)
                sets.unite(inc[a].second, inc[c].second);
            if (b - a != 2)
                report.ridge_violations.push_back({inc[a].first, b - a});
            a = b;
        }
    }
    std::set<std::size_t> roots;
    for (std::size_t f = 0; f < facets.size(); ++f)
        roots.insert(sets.find(f));
    report.components = roots.size();
    report.connected = report.components == 1;
    return report;
}

}  // namespace cohomotopy
