#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace cohomotopy {

/// Arbitrary-precision integer with an inline 64-bit fast path.
///
/// Values that fit in int64_t never touch GMP; arithmetic that would
/// overflow promotes transparently and results are demoted again when
/// they fit. Boundary matrices of simplicial complexes almost never leave
/// the fast path, but Smith normal form transforms can.
class Integer {
public:
    Integer() = default;
    Integer(long long v) : small_(static_cast<std::int64_t>(v)) {}  // NOLINT: implicit by intent
    Integer(int v) : small_(v) {}                                   // NOLINT
    explicit Integer(const mpz_class& v);
    static Integer from_string(const std::string& text);

    Integer(const Integer& other);
    Integer(Integer&& other) noexcept = default;
    Integer& operator=(const Integer& other);
    Integer& operator=(Integer&& other) noexcept = default;
    ~Integer() = default;

    bool is_zero() const { return !big_ && small_ == 0; }
    bool is_one() const { return !big_ && small_ == 1; }
    bool is_unit() const { return !big_ && (small_ == 1 || small_ == -1); }
    bool fits_int64() const { return !big_; }
    std::int64_t to_int64() const;  // throws std::overflow_error when it does not fit
    int sign() const;
    /// Parity, 0 or 1.
    int mod2() const;
    bool is_even() const { return mod2() == 0; }

    Integer abs() const;
    mpz_class to_mpz() const;
    std::string to_string() const;

    Integer& operator+=(const Integer& rhs);
    Integer& operator-=(const Integer& rhs);
    Integer& operator*=(const Integer& rhs);
    Integer operator-() const;

    friend Integer operator+(Integer lhs, const Integer& rhs) { return lhs += rhs; }
    friend Integer operator-(Integer lhs, const Integer& rhs) { return lhs -= rhs; }
    friend Integer operator*(Integer lhs, const Integer& rhs) { return lhs *= rhs; }

    friend bool operator==(const Integer& a, const Integer& b);
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

    /// Euclidean division: a = q*b + r with 0 <= r < |b|.
    static void divmod(const Integer& a, const Integer& b, Integer& q, Integer& r);
    /// Exact division; behavior is undefined unless b divides a.
    static Integer divexact(const Integer& a, const Integer& b);
    /// Non-negative remainder, as in divmod.
    static Integer mod(const Integer& a, const Integer& b);
    static Integer gcd(const Integer& a, const Integer& b);
    bool divides(const Integer& other) const;

private:
    void normalize();

    std::int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace cohomotopy
