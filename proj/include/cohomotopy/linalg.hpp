#pragma once

// Exact linear algebra over Z and Z/2: sparse and dense integer matrices,
// Smith normal form with transforms, cokernel presentations of finitely
// generated abelian groups, and packed-bit Gaussian elimination.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohomotopy/integer.hpp"

namespace cohomotopy {

using IntVector = std::vector<Integer>;
using Z2Vector = std::vector<std::uint8_t>;

/// Column-compressed sparse integer matrix. Stored entries are nonzero and
/// each column is sorted by row.
class SparseIntMatrix {
public:
    using Entry = std::pair<std::size_t, Integer>;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols);
    static SparseIntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;

    Integer at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Integer& value);
    void add(std::size_t r, std::size_t c, const Integer& value);
    /// Appends (r, value) to column c; rows must be pushed in increasing order.
    void push_back(std::size_t r, std::size_t c, Integer value);

    const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }

    SparseIntMatrix transpose() const;
    SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;
    IntVector apply(const IntVector& x) const;
    bool is_zero() const { return nonzeros() == 0; }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<Entry>> columns_;
};

/// Dense row-major integer matrix, used for small matrices and transforms.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_sparse(const SparseIntMatrix& m);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix transpose() const;
    SparseIntMatrix to_sparse() const;
    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;
    bool is_identity() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr > 0.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix V;
    IntMatrix D;
    IntMatrix U_inverse;
    IntMatrix V_inverse;
    std::size_t rank = 0;

    /// The nonzero diagonal entries d1 | d2 | ... | dr.
    IntVector invariant_factors() const;
};

/// Pivot: nonzero entry of minimal absolute value in the active block, ties
/// broken by lowest (row, col). The result is therefore deterministic.
SmithDecomposition smith_normal_form(const IntMatrix& m);
SmithDecomposition smith_normal_form(const SparseIntMatrix& m);

/// Finitely generated abelian group Z^free_rank + Z/d1 + Z/d2 + ... with
/// d1 | d2 | ... and every di >= 2.
struct PresentedGroup {
    std::size_t free_rank = 0;
    IntVector torsion;
    /// Representatives in some ambient group: one per torsion factor (same
    /// order as `torsion`), followed by free_rank free generators. May be empty
    /// when only the isomorphism type is known.
    std::vector<IntVector> generators;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    /// Order of the group when finite.
    std::optional<Integer> order() const;
    /// Number of even invariant factors (the rank of the 2-torsion subgroup).
    std::size_t two_rank() const;
    /// "0", "Z", "Z^4 ⊕ Z_2", "Z_2 ⊕ Z_4", ...
    std::string to_string() const;
    /// Same isomorphism type.
    bool isomorphic_to(const PresentedGroup& other) const;
};

/// Cokernel of a relation matrix together with the change of basis needed to
/// read off coordinates of arbitrary elements.
struct Cokernel {
    PresentedGroup group;
    /// Column j holds the coordinate functional for generator j: the j-th
    /// coordinate of x is the dot product of x with this column.
    IntMatrix coordinate_map;

    /// Coordinates of x in the generator basis, torsion entries reduced into
    /// [0, d).
    IntVector coordinates(const IntVector& x) const;
    /// Whether x maps to zero in the cokernel.
    bool is_zero(const IntVector& x) const;
};

/// Relations are the rows of `relations`; columns index the generators.
Cokernel cokernel(const SparseIntMatrix& relations);
PresentedGroup group_from_presentation(const SparseIntMatrix& relations);

/// Dense matrix over Z/2 with rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);
    static BitMatrix from_sparse(const SparseIntMatrix& m);
    static BitMatrix from_rows(const std::vector<Z2Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const
    {
        return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool v);
    void flip(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] ^= (std::uint64_t{1} << (c % 64)); }
    /// row[dst] ^= row[src]
    void add_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    Z2Vector apply(const Z2Vector& x) const;
    BitMatrix transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

std::size_t rank_mod2(const BitMatrix& m);
/// Basis of { x : M x = 0 }.
std::vector<Z2Vector> kernel_mod2(const BitMatrix& m);
/// Some x with M x = b, or nullopt when inconsistent.
std::optional<Z2Vector> solve_mod2(const BitMatrix& m, const Z2Vector& b);

}  // namespace cohomotopy
