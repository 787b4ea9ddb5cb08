#include "cohomotopy/reduction.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace cohomotopy {

namespace {

using SparseVec = std::vector<std::pair<std::uint32_t, Integer>>;

const Integer* lookup(const SparseVec& v, std::uint32_t idx)
{
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& e, std::uint32_t i) { return e.first < i; });
    return (it != v.end() && it->first == idx) ? &it->second : nullptr;
}

void erase_value(std::vector<std::uint32_t>& v, std::uint32_t x)
{
    auto it = std::find(v.begin(), v.end(), x);
    if (it != v.end()) {
        *it = v.back();
        v.pop_back();
    }
}

void reduce_mod2(Integer& v)
{
    v = Integer(v.mod2());
}

}  // namespace

/// Sparse elimination state; fills in a ReducedComplex.
class Reducer {
public:
    Reducer(ReducedComplex& out, const std::function<SparseIntMatrix(int)>& boundary) : Reducer(out)
    {
        for (int k = 1; k <= top_; ++k)
            load(k, boundary(k));
    }

    explicit Reducer(ReducedComplex& out) : out_(out)
    {
        top_ = out_.top_degree();
        const auto levels = static_cast<std::size_t>(top_ + 1);
        bnd_.resize(levels);
        cob_.resize(levels);
        alive_.resize(levels);
        for (std::size_t k = 0; k < levels; ++k) {
            bnd_[k].resize(out_.sizes_[k]);
            cob_[k].resize(out_.sizes_[k]);
            alive_[k].assign(out_.sizes_[k], 1);
        }
    }

    void load(int k, const SparseIntMatrix& m)
    {
        {
            if (m.rows() != out_.sizes_[static_cast<std::size_t>(k - 1)] ||
                m.cols() != out_.sizes_[static_cast<std::size_t>(k)])
                throw std::invalid_argument("ReducedComplex: boundary matrix has wrong shape");
            for (std::size_t c = 0; c < m.cols(); ++c) {
                auto& col = bnd_[static_cast<std::size_t>(k)][c];
                col.reserve(m.column(c).size());
                for (const auto& [r, v] : m.column(c)) {
                    col.emplace_back(static_cast<std::uint32_t>(r), v);
                    cob_[static_cast<std::size_t>(k - 1)][r].push_back(static_cast<std::uint32_t>(c));
                }
            }
        }
    }

    void run()
    {
        offset_.assign(static_cast<std::size_t>(top_ + 1), 0);
        for (int k = 1; k <= top_; ++k)
            offset_[static_cast<std::size_t>(k)] =
                offset_[static_cast<std::size_t>(k - 1)] + cob_[static_cast<std::size_t>(k - 1)].size();
        const std::size_t cells = offset_.back();
        cost_.assign(cells, 0);
        pos_.assign(cells, kAbsent);
        for (int k = 0; k < top_; ++k)
            for (std::uint32_t t = 0; t < cob_[static_cast<std::size_t>(k)].size(); ++t)
                push(k, t);
        while (!heap_.empty()) {
            const std::size_t id = heap_.front();
            const int deg = degree_of(id);
            const auto tau = static_cast<std::uint32_t>(id - offset_[static_cast<std::size_t>(deg)]);
            auto cand = candidate(deg, tau);
            if (!cand) {
                remove(id);
                continue;
            }
            if (cand->first != cost_[id]) {
                place(id, cand->first);
                continue;
            }
            eliminate(deg + 1, cand->second, tau);
        }
        finish();
    }

private:
    /// Best (cost, sigma) among unit-coefficient cofaces of tau.
    std::optional<std::pair<std::uint64_t, std::uint32_t>> candidate(int deg, std::uint32_t tau) const
    {
        if (deg >= top_)
            return std::nullopt;
        const auto& cf = cob_[static_cast<std::size_t>(deg)][tau];
        if (cf.empty())
            return std::nullopt;
        const auto& upper = bnd_[static_cast<std::size_t>(deg + 1)];
        std::optional<std::tuple<std::uint64_t, std::size_t, std::uint32_t>> best;
        for (std::uint32_t s : cf) {
            const Integer* c = lookup(upper[s], tau);
            if (!c || !c->is_unit())
                continue;
            std::uint64_t cost = static_cast<std::uint64_t>(cf.size() - 1) * (upper[s].size() - 1);
            std::tuple<std::uint64_t, std::size_t, std::uint32_t> key{cost, upper[s].size(), s};
            if (!best || key < *best)
                best = key;
        }
        if (!best)
            return std::nullopt;
        return std::make_pair(std::get<0>(*best), std::get<2>(*best));
    }

    // Indexed binary min-heap over the cells of degree < top, keyed by
    // (cost, degree, index); the id order is (degree, index).
    static constexpr std::uint32_t kAbsent = UINT32_MAX;

    int degree_of(std::size_t id) const
    {
        return static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), id) - offset_.begin()) - 1;
    }

    bool before(std::size_t a, std::size_t b) const { return cost_[a] != cost_[b] ? cost_[a] < cost_[b] : a < b; }

    void swap_slots(std::size_t i, std::size_t j)
    {
        std::swap(heap_[i], heap_[j]);
        pos_[heap_[i]] = static_cast<std::uint32_t>(i);
        pos_[heap_[j]] = static_cast<std::uint32_t>(j);
    }

    void sift(std::size_t i)
    {
        while (i > 0 && before(heap_[i], heap_[(i - 1) / 2])) {
            swap_slots(i, (i - 1) / 2);
            i = (i - 1) / 2;
        }
        for (;;) {
            std::size_t best = i, l = 2 * i + 1, r = l + 1;
            if (l < heap_.size() && before(heap_[l], heap_[best]))
                best = l;
            if (r < heap_.size() && before(heap_[r], heap_[best]))
                best = r;
            if (best == i)
                return;
            swap_slots(i, best);
            i = best;
        }
    }

    void place(std::size_t id, std::uint64_t cost)
    {
        cost_[id] = cost;
        if (pos_[id] == kAbsent) {
            pos_[id] = static_cast<std::uint32_t>(heap_.size());
            heap_.push_back(static_cast<std::uint32_t>(id));
        }
        sift(pos_[id]);
    }

    void remove(std::size_t id)
    {
        const std::uint32_t i = pos_[id];
        if (i == kAbsent)
            return;
        swap_slots(i, heap_.size() - 1);
        heap_.pop_back();
        pos_[id] = kAbsent;
        if (i < heap_.size())
            sift(i);
    }

    void push(int deg, std::uint32_t tau)
    {
        const std::size_t id = offset_[static_cast<std::size_t>(deg)] + tau;
        if (auto cand = candidate(deg, tau))
            place(id, cand->first);
        else
            remove(id);
    }

    void drop(int deg, std::uint32_t idx)
    {
        if (deg < top_)
            remove(offset_[static_cast<std::size_t>(deg)] + idx);
    }

    void eliminate(int k, std::uint32_t sigma, std::uint32_t tau)
    {
        const auto ku = static_cast<std::size_t>(k);
        auto& bk = bnd_[ku];
        ReducedComplex::Step st;
        st.sigma_degree = k;
        st.sigma = sigma;
        st.tau = tau;
        st.a = lookup(bk[sigma], tau)->sign();
        const SparseVec col = bk[sigma];
        SparseVec row;
        for (std::uint32_t rho : cob_[ku - 1][tau])
            if (rho != sigma)
                row.emplace_back(rho, *lookup(bk[rho], tau));
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

        refresh_.clear();
        const Integer a(st.a);
        for (const auto& [rho, lambda] : row) {
            Integer factor = lambda * a;
            SparseVec merged;
            const SparseVec& old = bk[rho];
            merged.reserve(old.size() + col.size());
            std::size_t i = 0, j = 0;
            while (i < old.size() || j < col.size()) {
                if (j == col.size() || (i < old.size() && old[i].first < col[j].first)) {
                    merged.push_back(old[i++]);
                } else if (i == old.size() || col[j].first < old[i].first) {
                    // new incidence
                    Integer v = -(factor * col[j].second);
                    cob_[ku - 1][col[j].first].push_back(rho);
                    merged.emplace_back(col[j].first, std::move(v));
                    ++j;
                } else {
                    Integer v = old[i].second - factor * col[j].second;
                    if (v.is_zero())
                        erase_value(cob_[ku - 1][old[i].first], rho);
                    else
                        merged.emplace_back(old[i].first, std::move(v));
                    refresh_.emplace_back(k - 1, old[i].first);
                    ++i;
                    ++j;
                }
            }
            bk[rho] = std::move(merged);
            for (const auto& e : bk[rho])
                refresh_.emplace_back(k - 1, e.first);
        }

        // drop sigma
        if (k < top_) {
            for (std::uint32_t eta : cob_[ku][sigma]) {
                auto& be = bnd_[ku + 1][eta];
                be.erase(std::remove_if(be.begin(), be.end(), [&](const auto& e) { return e.first == sigma; }),
                         be.end());
                for (const auto& e : be)
                    refresh_.emplace_back(k, e.first);
            }
        }
        for (const auto& e : bk[sigma]) {
            erase_value(cob_[ku - 1][e.first], sigma);
            refresh_.emplace_back(k - 1, e.first);
        }
        SparseVec().swap(bk[sigma]);
        std::vector<std::uint32_t>().swap(cob_[ku][sigma]);
        alive_[ku][sigma] = 0;

        // drop tau
        if (k - 1 >= 1) {
            for (const auto& e : bnd_[ku - 1][tau]) {
                erase_value(cob_[ku - 2][e.first], tau);
                refresh_.emplace_back(k - 2, e.first);
            }
            SparseVec().swap(bnd_[ku - 1][tau]);
        }
        std::vector<std::uint32_t>().swap(cob_[ku - 1][tau]);
        alive_[ku - 1][tau] = 0;

        std::sort(refresh_.begin(), refresh_.end());
        refresh_.erase(std::unique(refresh_.begin(), refresh_.end()), refresh_.end());
        drop(k, sigma);
        drop(k - 1, tau);
        for (const auto& [deg, idx] : refresh_)
            if (alive_[static_cast<std::size_t>(deg)][idx] && deg < top_)
                push(deg, idx);

        st.col = ReducedComplex::PackedEntries(col);
        st.row = ReducedComplex::PackedEntries(row);
        out_.steps_.push_back(std::move(st));
    }

    void finish()
    {
        const auto levels = static_cast<std::size_t>(top_ + 1);
        out_.survivors_.assign(levels, {});
        std::vector<std::vector<std::size_t>> position(levels);
        for (std::size_t k = 0; k < levels; ++k) {
            position[k].assign(alive_[k].size(), 0);
            for (std::size_t i = 0; i < alive_[k].size(); ++i)
                if (alive_[k][i]) {
                    position[k][i] = out_.survivors_[k].size();
                    out_.survivors_[k].push_back(i);
                }
        }
        out_.reduced_.assign(levels, SparseIntMatrix());
        for (std::size_t k = 1; k < levels; ++k) {
            SparseIntMatrix m(out_.survivors_[k - 1].size(), out_.survivors_[k].size());
            for (std::size_t j = 0; j < out_.survivors_[k].size(); ++j)
                for (const auto& [face, v] : bnd_[k][out_.survivors_[k][j]])
                    m.push_back(position[k - 1][face], j, v);
            out_.reduced_[k] = std::move(m);
        }
    }

    ReducedComplex& out_;
    int top_ = 0;
    std::vector<std::vector<SparseVec>> bnd_;
    std::vector<std::vector<std::vector<std::uint32_t>>> cob_;
    std::vector<std::vector<char>> alive_;
    std::vector<std::size_t> offset_;
    std::vector<std::uint64_t> cost_;
    std::vector<std::uint32_t> pos_;
    std::vector<std::uint32_t> heap_;
    std::vector<std::pair<int, std::uint32_t>> refresh_;
};

ReducedComplex::ReducedComplex(std::vector<std::size_t> sizes, const std::vector<SparseIntMatrix>& boundaries)
    : sizes_(std::move(sizes))
{
    if (sizes_.empty())
        throw std::invalid_argument("ReducedComplex: empty complex");
    if (boundaries.size() < sizes_.size())
        throw std::invalid_argument("ReducedComplex: missing boundary matrices");
    Reducer r(*this, [&](int k) -> const SparseIntMatrix& { return boundaries[static_cast<std::size_t>(k)]; });
    r.run();
}

ReducedComplex::ReducedComplex(std::vector<std::size_t> sizes, const std::function<SparseIntMatrix(int)>& boundary)
    : sizes_(std::move(sizes))
{
    if (sizes_.empty())
        throw std::invalid_argument("ReducedComplex: empty complex");
    Reducer r(*this, boundary);
    r.run();
}

ReducedComplex::PackedEntries::PackedEntries(const SparseVec& v)
{
    bool fits = true;
    for (const auto& e : v)
        if (!e.second.fits_int64() || e.second.to_int64() < INT32_MIN || e.second.to_int64() > INT32_MAX) {
            fits = false;
            break;
        }
    if (!fits) {
        wide_ = v;
        return;
    }
    small_.reserve(v.size());
    for (const auto& e : v)
        small_.emplace_back(e.first, static_cast<std::int32_t>(e.second.to_int64()));
}

std::size_t ReducedComplex::original_size(int k) const
{
    return (k < 0 || k > top_degree()) ? 0 : sizes_[static_cast<std::size_t>(k)];
}

std::size_t ReducedComplex::reduced_size(int k) const
{
    return (k < 0 || k > top_degree()) ? 0 : survivors_[static_cast<std::size_t>(k)].size();
}

const SparseIntMatrix& ReducedComplex::boundary(int k) const
{
    static const SparseIntMatrix empty;
    if (k < 1 || k > top_degree())
        return empty;
    return reduced_[static_cast<std::size_t>(k)];
}

IntVector ReducedComplex::lift_chain(int k, const IntVector& reduced, bool mod2) const
{
    if (reduced.size() != reduced_size(k))
        throw std::invalid_argument("lift_chain: wrong length");
    IntVector z(original_size(k));
    for (std::size_t j = 0; j < reduced.size(); ++j)
        z[survivors(k)[j]] = reduced[j];
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        if (it->sigma_degree != k)
            continue;
        Integer dot;
        for (const auto& [rho, lambda] : it->row)
            if (!z[rho].is_zero())
                dot += z[rho] * lambda;
        z[it->sigma] = -(dot * Integer(it->a));
        if (mod2)
            reduce_mod2(z[it->sigma]);
    }
    return z;
}

IntVector ReducedComplex::project_chain(int k, const IntVector& original, bool mod2) const
{
    if (original.size() != original_size(k))
        throw std::invalid_argument("project_chain: wrong length");
    IntVector x = original;
    for (const auto& st : steps_) {
        if (st.sigma_degree == k + 1) {
            if (x[st.tau].is_zero())
                continue;
            Integer c = x[st.tau] * Integer(st.a);
            for (const auto& [phi, v] : st.col) {
                x[phi] -= c * v;
                if (mod2)
                    reduce_mod2(x[phi]);
            }
        } else if (st.sigma_degree == k) {
            x[st.sigma] = Integer();
        }
    }
    IntVector out(reduced_size(k));
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = x[survivors(k)[j]];
    return out;
}

IntVector ReducedComplex::pull_cochain(int k, const IntVector& reduced, bool mod2) const
{
    if (reduced.size() != reduced_size(k))
        throw std::invalid_argument("pull_cochain: wrong length");
    IntVector f(original_size(k));
    for (std::size_t j = 0; j < reduced.size(); ++j)
        f[survivors(k)[j]] = reduced[j];
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        if (it->sigma_degree != k + 1)
            continue;
        Integer acc;
        for (const auto& [phi, v] : it->col)
            if (phi != it->tau && !f[phi].is_zero())
                acc += v * f[phi];
        f[it->tau] = -(acc * Integer(it->a));
        if (mod2)
            reduce_mod2(f[it->tau]);
    }
    return f;
}

IntVector ReducedComplex::push_cochain(int k, const IntVector& original, bool mod2) const
{
    if (original.size() != original_size(k))
        throw std::invalid_argument("push_cochain: wrong length");
    IntVector g = original;
    for (const auto& st : steps_) {
        if (st.sigma_degree == k) {
            if (!g[st.sigma].is_zero()) {
                Integer c = g[st.sigma] * Integer(st.a);
                for (const auto& [rho, lambda] : st.row) {
                    g[rho] -= c * lambda;
                    if (mod2)
                        reduce_mod2(g[rho]);
                }
            }
            g[st.sigma] = Integer();
        } else if (st.sigma_degree == k + 1) {
            g[st.tau] = Integer();
        }
    }
    IntVector out(reduced_size(k));
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = g[survivors(k)[j]];
    return out;
}

IntVector ReducedComplex::coboundary_preimage(int k, const IntVector& w, const IntVector& reduced_preimage,
                                              bool mod2) const
{
    if (w.size() != original_size(k) || reduced_preimage.size() != reduced_size(k - 1))
        throw std::invalid_argument("coboundary_preimage: wrong length");
    // Forward pass: push w through each step, recording the homotopy terms
    // h_i^T w_{i-1} = a * w_{i-1}(sigma_i) tau_i^*.
    IntVector g = w;
    std::vector<Integer> homotopy(steps_.size());
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const auto& st = steps_[i];
        if (st.sigma_degree == k) {
            Integer gs = g[st.sigma];
            if (!gs.is_zero()) {
                homotopy[i] = gs * Integer(st.a);
                Integer c = homotopy[i];
                for (const auto& [rho, lambda] : st.row) {
                    g[rho] -= c * lambda;
                    if (mod2)
                        reduce_mod2(g[rho]);
                }
            }
            g[st.sigma] = Integer();
        }
    }
    // Backward pass: y_{i-1} = pi_i^T y_i + h_i^T w_{i-1}.
    IntVector y(original_size(k - 1));
    for (std::size_t j = 0; j < reduced_preimage.size(); ++j)
        y[survivors(k - 1)[j]] = reduced_preimage[j];
    for (std::size_t i = steps_.size(); i-- > 0;) {
        const auto& st = steps_[i];
        if (st.sigma_degree != k)
            continue;
        Integer acc;
        for (const auto& [phi, v] : st.col)
            if (phi != st.tau && !y[phi].is_zero())
                acc += v * y[phi];
        y[st.tau] = homotopy[i] - acc * Integer(st.a);
        if (mod2)
            reduce_mod2(y[st.tau]);
    }
    return y;
}

IntVector ReducedComplex::boundary_preimage(int k, const IntVector& z, const IntVector& reduced_preimage,
                                            bool mod2) const
{
    if (z.size() != original_size(k) || reduced_preimage.size() != reduced_size(k + 1))
        throw std::invalid_argument("boundary_preimage: wrong length");
    // Forward pass: project z, recording h_i z_{i-1} = a * z_{i-1}[tau_i] sigma_i.
    IntVector x = z;
    std::vector<Integer> homotopy(steps_.size());
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const auto& st = steps_[i];
        if (st.sigma_degree == k + 1) {
            if (x[st.tau].is_zero())
                continue;
            Integer c = x[st.tau] * Integer(st.a);
            homotopy[i] = c;
            for (const auto& [phi, v] : st.col) {
                x[phi] -= c * v;
                if (mod2)
                    reduce_mod2(x[phi]);
            }
        } else if (st.sigma_degree == k) {
            x[st.sigma] = Integer();
        }
    }
    // Backward pass: b_{i-1} = iota_i b_i + h_i z_{i-1}.
    IntVector b(original_size(k + 1));
    for (std::size_t j = 0; j < reduced_preimage.size(); ++j)
        b[survivors(k + 1)[j]] = reduced_preimage[j];
    for (std::size_t i = steps_.size(); i-- > 0;) {
        const auto& st = steps_[i];
        if (st.sigma_degree != k + 1)
            continue;
        Integer dot;
        for (const auto& [rho, lambda] : st.row)
            if (!b[rho].is_zero())
                dot += b[rho] * lambda;
        b[st.sigma] = homotopy[i] - dot * Integer(st.a);
        if (mod2)
            reduce_mod2(b[st.sigma]);
    }
    return b;
}

}  // namespace cohomotopy
