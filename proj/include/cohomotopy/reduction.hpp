#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cohomotopy/linalg.hpp"

namespace cohomotopy {

/// Chain-homotopy equivalent reduction of a free chain complex over Z.
///
/// Pairs (sigma, tau) with <d sigma, tau> = +-1 are cancelled one at a time:
/// every other cell rho with tau in its boundary is replaced by
/// rho - <d rho, tau> a sigma, and sigma, tau are dropped. The log of
/// eliminations yields the comparison maps
///
///   lift    : C' -> C   (inclusion, on chains)
///   project : C  -> C'  (projection, on chains)
///
/// with project o lift = id and lift o project homotopic to id, together with
/// their duals on cochains and explicit (co)boundary preimages built from the
/// homotopy. Pivots are chosen by a Markowitz-style cost (|cofaces(tau)|-1) *
/// (|d sigma|-1), ties broken by degree and index, so the result is
/// deterministic.
class ReducedComplex {
public:
    ReducedComplex() = default;
    /// sizes[k] = rank of C_k for k = 0..top; boundaries[k] is d_k : C_k -> C_{k-1}
    /// for k = 1..top (boundaries[0] is ignored).
    ReducedComplex(std::vector<std::size_t> sizes, const std::vector<SparseIntMatrix>& boundaries);
    /// As above, with d_k built on demand so only one matrix is held at a time.
    ReducedComplex(std::vector<std::size_t> sizes, const std::function<SparseIntMatrix(int)>& boundary);

    int top_degree() const { return static_cast<int>(sizes_.size()) - 1; }
    std::size_t original_size(int k) const;
    std::size_t reduced_size(int k) const;
    /// Reduced d_k in survivor indexing; empty matrix outside [1, top].
    const SparseIntMatrix& boundary(int k) const;
    const std::vector<std::size_t>& survivors(int k) const { return survivors_.at(static_cast<std::size_t>(k)); }
    std::size_t eliminated_pairs() const { return steps_.size(); }

    IntVector lift_chain(int k, const IntVector& reduced, bool mod2 = false) const;
    IntVector project_chain(int k, const IntVector& original, bool mod2 = false) const;
    /// Cochain dual of project: f |-> f o project.
    IntVector pull_cochain(int k, const IntVector& reduced, bool mod2 = false) const;
    /// Cochain dual of lift: g |-> g o lift.
    IntVector push_cochain(int k, const IntVector& original, bool mod2 = false) const;

    /// Given a k-cocycle w on C and y' on C'_{k-1} with delta' y' = push_cochain(k, w),
    /// returns y on C_{k-1} with delta y = w.
    IntVector coboundary_preimage(int k, const IntVector& w, const IntVector& reduced_preimage,
                                  bool mod2 = false) const;
    /// Given a k-cycle z on C and b' on C'_{k+1} with d' b' = project_chain(k, z),
    /// returns b on C_{k+1} with d b = z.
    IntVector boundary_preimage(int k, const IntVector& z, const IntVector& reduced_preimage,
                                bool mod2 = false) const;

private:
    using SparseVec = std::vector<std::pair<std::uint32_t, Integer>>;

    /// Sparse (index, value) list stored as 32-bit pairs unless some value
    /// does not fit, in which case the full-precision form is kept instead.
    class PackedEntries {
    public:
        PackedEntries() = default;
        explicit PackedEntries(const SparseVec& v);
        std::size_t size() const { return wide_.empty() ? small_.size() : wide_.size(); }
        std::pair<std::uint32_t, Integer> operator[](std::size_t i) const
        {
            if (!wide_.empty())
                return wide_[i];
            return {small_[i].first, Integer(small_[i].second)};
        }

        class Iterator {
        public:
            Iterator(const PackedEntries* p, std::size_t i) : p_(p), i_(i) {}
            std::pair<std::uint32_t, Integer> operator*() const { return (*p_)[i_]; }
            Iterator& operator++()
            {
                ++i_;
                return *this;
            }
            bool operator!=(const Iterator& o) const { return i_ != o.i_; }

        private:
            const PackedEntries* p_;
            std::size_t i_;
        };
        Iterator begin() const { return {this, 0}; }
        Iterator end() const { return {this, size()}; }

    private:
        std::vector<std::pair<std::uint32_t, std::int32_t>> small_;
        SparseVec wide_;
    };

    struct Step {
        int sigma_degree = 0;
        std::uint32_t sigma = 0;
        std::uint32_t tau = 0;
        int a = 1;           // <d sigma, tau>, a unit
        PackedEntries col;   // d sigma at elimination time (tau included)
        PackedEntries row;   // {(rho, <d rho, tau>)} for the other cofaces of tau
    };

    std::vector<std::size_t> sizes_;
    std::vector<std::vector<std::size_t>> survivors_;
    std::vector<SparseIntMatrix> reduced_;
    std::vector<Step> steps_;

    friend class Reducer;
};

}  // namespace cohomotopy
