#include "cohomotopy/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cohomotopy {

// ---------------------------------------------------------------------------
// SparseIntMatrix

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), columns_(cols)
{
}

SparseIntMatrix SparseIntMatrix::from_rows(const std::vector<std::vector<long long>>& rows)
{
    std::size_t r = rows.size();
    std::size_t c = r ? rows.front().size() : 0;
    SparseIntMatrix out(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("SparseIntMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            if (rows[i][j] != 0)
                out.columns_[j].emplace_back(i, Integer(rows[i][j]));
    }
    return out;
}

std::size_t SparseIntMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& col : columns_)
        n += col.size();
    return n;
}

Integer SparseIntMatrix::at(std::size_t r, std::size_t c) const
{
    const auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r)
        return it->second;
    return Integer();
}

void SparseIntMatrix::set(std::size_t r, std::size_t c, const Integer& value)
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("SparseIntMatrix::set: index out of range");
    auto& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        if (value.is_zero())
            col.erase(it);
        else
            it->second = value;
    } else if (!value.is_zero()) {
        col.insert(it, Entry{r, value});
    }
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, const Integer& value)
{
    set(r, c, at(r, c) + value);
}

void SparseIntMatrix::push_back(std::size_t r, std::size_t c, Integer value)
{
    if (value.is_zero())
        return;
    auto& col = columns_.at(c);
    if (!col.empty() && col.back().first >= r)
        throw std::invalid_argument("SparseIntMatrix::push_back: rows out of order");
    col.emplace_back(r, std::move(value));
}

SparseIntMatrix SparseIntMatrix::transpose() const
{
    SparseIntMatrix out(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : columns_[c])
            out.columns_[r].emplace_back(c, v);
    return out;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("SparseIntMatrix::operator*: dimension mismatch");
    SparseIntMatrix out(rows_, rhs.cols_);
    std::vector<Integer> acc(rows_);
    std::vector<std::size_t> touched;
    std::vector<char> mark(rows_, 0);
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
        touched.clear();
        for (const auto& [k, b] : rhs.columns_[j]) {
            for (const auto& [i, a] : columns_[k]) {
                if (!mark[i]) {
                    mark[i] = 1;
                    touched.push_back(i);
                }
                acc[i] += a * b;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t i : touched) {
            if (!acc[i].is_zero())
                out.columns_[j].emplace_back(i, acc[i]);
            acc[i] = Integer();
            mark[i] = 0;
        }
    }
    return out;
}

IntVector SparseIntMatrix::apply(const IntVector& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("SparseIntMatrix::apply: dimension mismatch");
    IntVector y(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (x[c].is_zero())
            continue;
        for (const auto& [r, v] : columns_[c])
            y[r] += v * x[c];
    }
    return y;
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        out(i, i) = 1;
    return out;
}

IntMatrix IntMatrix::from_sparse(const SparseIntMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            out(r, c) = v;
    return out;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows)
{
    return from_sparse(SparseIntMatrix::from_rows(rows));
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix::operator*: dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                if (!rhs(k, j).is_zero())
                    out(i, j) += a * rhs(k, j);
        }
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

SparseIntMatrix IntMatrix::to_sparse() const
{
    SparseIntMatrix out(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back(i, j, (*this)(i, j));
    return out;
}

IntVector IntMatrix::row(std::size_t r) const
{
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const
{
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

bool IntMatrix::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != Integer(i == j ? 1 : 0))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

/// Working state: A is transformed in place while U, U^-1, V, V^-1 track
/// the accumulated row and column operations.
class SmithWorker {
public:
    explicit SmithWorker(IntMatrix a)
        : A(std::move(a)), U(IntMatrix::identity(A.rows())), Ui(IntMatrix::identity(A.rows())),
          V(IntMatrix::identity(A.cols())), Vi(IntMatrix::identity(A.cols()))
    {
    }

    IntMatrix A, U, Ui, V, Vi;

    // row_i -= q * row_t
    void row_axpy(std::size_t i, std::size_t t, const Integer& q)
    {
        if (q.is_zero())
            return;
        for (std::size_t c = 0; c < A.cols(); ++c)
            if (!A(t, c).is_zero())
                A(i, c) -= q * A(t, c);
        for (std::size_t c = 0; c < U.cols(); ++c)
            if (!U(t, c).is_zero())
                U(i, c) -= q * U(t, c);
        for (std::size_t r = 0; r < Ui.rows(); ++r)
            if (!Ui(r, i).is_zero())
                Ui(r, t) += q * Ui(r, i);
    }

    // col_j -= q * col_t
    void col_axpy(std::size_t j, std::size_t t, const Integer& q)
    {
        if (q.is_zero())
            return;
        for (std::size_t r = 0; r < A.rows(); ++r)
            if (!A(r, t).is_zero())
                A(r, j) -= q * A(r, t);
        for (std::size_t r = 0; r < V.rows(); ++r)
            if (!V(r, t).is_zero())
                V(r, j) -= q * V(r, t);
        for (std::size_t c = 0; c < Vi.cols(); ++c)
            if (!Vi(j, c).is_zero())
                Vi(t, c) += q * Vi(j, c);
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t c = 0; c < A.cols(); ++c)
            std::swap(A(a, c), A(b, c));
        for (std::size_t c = 0; c < U.cols(); ++c)
            std::swap(U(a, c), U(b, c));
        for (std::size_t r = 0; r < Ui.rows(); ++r)
            std::swap(Ui(r, a), Ui(r, b));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t r = 0; r < A.rows(); ++r)
            std::swap(A(r, a), A(r, b));
        for (std::size_t r = 0; r < V.rows(); ++r)
            std::swap(V(r, a), V(r, b));
        for (std::size_t c = 0; c < Vi.cols(); ++c)
            std::swap(Vi(a, c), Vi(b, c));
    }

    void negate_row(std::size_t t)
    {
        for (std::size_t c = 0; c < A.cols(); ++c)
            A(t, c) = -A(t, c);
        for (std::size_t c = 0; c < U.cols(); ++c)
            U(t, c) = -U(t, c);
        for (std::size_t r = 0; r < Ui.rows(); ++r)
            Ui(r, t) = -Ui(r, t);
    }

    bool pick_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const
    {
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < A.rows(); ++i)
            for (std::size_t j = t; j < A.cols(); ++j) {
                const Integer& v = A(i, j);
                if (v.is_zero())
                    continue;
                Integer av = v.abs();
                if (!found || av < best) {
                    found = true;
                    best = std::move(av);
                    pi = i;
                    pj = j;
                    if (best.is_one())
                        return true;
                }
            }
        return found;
    }

    /// Runs the full reduction; returns the rank.
    std::size_t run()
    {
        std::size_t limit = std::min(A.rows(), A.cols());
        std::size_t t = 0;
        for (; t < limit; ++t) {
            while (true) {
                std::size_t pi = 0, pj = 0;
                if (!pick_pivot(t, pi, pj))
                    return t;
                swap_rows(t, pi);
                swap_cols(t, pj);
                bool clean = true;
                Integer q, r;
                for (std::size_t i = t + 1; i < A.rows(); ++i) {
                    if (A(i, t).is_zero())
                        continue;
                    Integer::divmod(A(i, t), A(t, t), q, r);
                    row_axpy(i, t, q);
                    if (!A(i, t).is_zero())
                        clean = false;
                }
                for (std::size_t j = t + 1; j < A.cols(); ++j) {
                    if (A(t, j).is_zero())
                        continue;
                    Integer::divmod(A(t, j), A(t, t), q, r);
                    col_axpy(j, t, q);
                    if (!A(t, j).is_zero())
                        clean = false;
                }
                if (!clean)
                    continue;
                // Divisibility: fold any offending row into row t and retry.
                bool divisible = true;
                for (std::size_t i = t + 1; i < A.rows() && divisible; ++i)
                    for (std::size_t j = t + 1; j < A.cols(); ++j)
                        if (!A(i, j).is_zero() && !A(t, t).divides(A(i, j))) {
                            row_axpy(t, i, Integer(-1));
                            divisible = false;
                            break;
                        }
                if (divisible)
                    break;
            }
            if (A(t, t).sign() < 0)
                negate_row(t);
        }
        return t;
    }
};

}  // namespace

IntVector SmithDecomposition::invariant_factors() const
{
    IntVector out;
    for (std::size_t i = 0; i < rank; ++i)
        out.push_back(D(i, i));
    return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& m)
{
    SmithWorker w(m);
    std::size_t rank = w.run();
    SmithDecomposition out;
    out.rank = rank;
    out.D = std::move(w.A);
    out.U = std::move(w.U);
    out.U_inverse = std::move(w.Ui);
    out.V = std::move(w.V);
    out.V_inverse = std::move(w.Vi);
#ifdef COHOMOTOPY_CHECKED
    if (!(out.U * m * out.V == out.D) || !(out.U * out.U_inverse).is_identity() ||
        !(out.V * out.V_inverse).is_identity())
        throw std::logic_error("smith_normal_form: transform check failed");
#endif
    return out;
}

SmithDecomposition smith_normal_form(const SparseIntMatrix& m)
{
    return smith_normal_form(IntMatrix::from_sparse(m));
}

// ---------------------------------------------------------------------------
// PresentedGroup / cokernel

std::optional<Integer> PresentedGroup::order() const
{
    if (free_rank != 0)
        return std::nullopt;
    Integer n(1);
    for (const auto& d : torsion)
        n *= d;
    return n;
}

std::size_t PresentedGroup::two_rank() const
{
    return static_cast<std::size_t>(
        std::count_if(torsion.begin(), torsion.end(), [](const Integer& d) { return d.is_even(); }));
}

std::string PresentedGroup::to_string() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1)
            os << "^" << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        if (!first)
            os << " ⊕ ";
        os << "Z_" << d;
        first = false;
    }
    return os.str();
}

bool PresentedGroup::isomorphic_to(const PresentedGroup& other) const
{
    return free_rank == other.free_rank && torsion == other.torsion;
}

IntVector Cokernel::coordinates(const IntVector& x) const
{
    if (x.size() != coordinate_map.rows())
        throw std::invalid_argument("Cokernel::coordinates: dimension mismatch");
    IntVector out(coordinate_map.cols());
    for (std::size_t j = 0; j < coordinate_map.cols(); ++j) {
        Integer acc;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero() && !coordinate_map(i, j).is_zero())
                acc += x[i] * coordinate_map(i, j);
        if (j < group.torsion.size())
            acc = Integer::mod(acc, group.torsion[j]);
        out[j] = std::move(acc);
    }
    return out;
}

bool Cokernel::is_zero(const IntVector& x) const
{
    auto c = coordinates(x);
    return std::all_of(c.begin(), c.end(), [](const Integer& v) { return v.is_zero(); });
}

Cokernel cokernel(const SparseIntMatrix& relations)
{
    // U R V = D. Rows of V^-1 form a basis f_j of Z^g in which the relation
    // lattice is spanned by d_j f_j; the coordinates of x are x V.
    const std::size_t g = relations.cols();
    SmithDecomposition snf = smith_normal_form(relations);

    std::vector<std::size_t> torsion_idx, free_idx;
    Cokernel out;
    for (std::size_t j = 0; j < g; ++j) {
        if (j < snf.rank) {
            const Integer& d = snf.D(j, j);
            if (d.is_one())
                continue;
            torsion_idx.push_back(j);
            out.group.torsion.push_back(d);
        } else {
            free_idx.push_back(j);
        }
    }
    out.group.free_rank = free_idx.size();

    std::vector<std::size_t> order = torsion_idx;
    order.insert(order.end(), free_idx.begin(), free_idx.end());
    out.coordinate_map = IntMatrix(g, order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.group.generators.push_back(snf.V_inverse.row(order[k]));
        for (std::size_t i = 0; i < g; ++i)
            out.coordinate_map(i, k) = snf.V(i, order[k]);
    }
    return out;
}

PresentedGroup group_from_presentation(const SparseIntMatrix& relations)
{
    return cokernel(relations).group;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0)
{
}

BitMatrix BitMatrix::from_sparse(const SparseIntMatrix& m)
{
    BitMatrix out(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            if (v.mod2())
                out.set(r, c, true);
    return out;
}

BitMatrix BitMatrix::from_rows(const std::vector<Z2Vector>& rows)
{
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    BitMatrix out(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            if (rows[i][j] & 1U)
                out.set(i, j, true);
    }
    return out;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v)
{
    auto& w = bits_[r * words_ + c / 64];
    auto mask = std::uint64_t{1} << (c % 64);
    w = v ? (w | mask) : (w & ~mask);
}

void BitMatrix::add_row(std::size_t dst, std::size_t src)
{
    std::uint64_t* d = &bits_[dst * words_];
    const std::uint64_t* s = &bits_[src * words_];
    for (std::size_t k = 0; k < words_; ++k)
        d[k] ^= s[k];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * words_),
                     bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * words_),
                     bits_.begin() + static_cast<std::ptrdiff_t>(b * words_));
}

Z2Vector BitMatrix::apply(const Z2Vector& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("BitMatrix::apply: dimension mismatch");
    Z2Vector y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            if (x[c] & 1U)
                acc ^= get(r, c) ? 1U : 0U;
        y[r] = static_cast<std::uint8_t>(acc);
    }
    return y;
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c))
                out.set(c, r, true);
    return out;
}

namespace {

/// Reduced row echelon form in place; returns pivot columns per pivot row.
std::vector<std::size_t> row_reduce(BitMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        while (p < m.rows() && !m.get(p, c))
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(row, p);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != row && m.get(r, c))
                m.add_row(r, row);
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank_mod2(const BitMatrix& m)
{
    BitMatrix work = m;
    return row_reduce(work).size();
}

std::vector<Z2Vector> kernel_mod2(const BitMatrix& m)
{
    BitMatrix work = m;
    auto pivots = row_reduce(work);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : pivots)
        is_pivot[c] = 1;
    std::vector<Z2Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Z2Vector v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (work.get(r, f))
                v[pivots[r]] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Z2Vector> solve_mod2(const BitMatrix& m, const Z2Vector& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve_mod2: right-hand side has wrong length");
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c))
                aug.set(r, c, true);
        if (b[r] & 1U)
            aug.set(r, m.cols(), true);
    }
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == m.cols())
        return std::nullopt;
    Z2Vector x(m.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (aug.get(r, m.cols()))
            x[pivots[r]] = 1;
    return x;
}

}  // namespace cohomotopy
