#include "cohomotopy/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace cohomotopy {

namespace {

mpz_class mpz_from_int64(std::int64_t v)
{
    mpz_class out;
    // mpz_set_si takes long, which is 64-bit on every platform we build on.
    static_assert(sizeof(long) == sizeof(std::int64_t));
    mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
    return out;
}

}  // namespace

Integer::Integer(const mpz_class& v) : big_(std::make_unique<mpz_class>(v)) { normalize(); }

Integer Integer::from_string(const std::string& text)
{
    return Integer(mpz_class(text, 10));
}

Integer::Integer(const Integer& other)
    : small_(other.small_), big_(other.big_ ? std::make_unique<mpz_class>(*other.big_) : nullptr)
{
}

Integer& Integer::operator=(const Integer& other)
{
    if (this == &other)
        return *this;
    small_ = other.small_;
    if (other.big_) {
        if (big_)
            *big_ = *other.big_;
        else
            big_ = std::make_unique<mpz_class>(*other.big_);
    } else {
        big_.reset();
    }
    return *this;
}

void Integer::normalize()
{
    if (big_ && mpz_fits_slong_p(big_->get_mpz_t())) {
        small_ = mpz_get_si(big_->get_mpz_t());
        big_.reset();
    }
}

std::int64_t Integer::to_int64() const
{
    if (big_)
        throw std::overflow_error("Integer does not fit in int64: " + big_->get_str());
    return small_;
}

int Integer::sign() const
{
    if (big_)
        return mpz_sgn(big_->get_mpz_t());
    return (small_ > 0) - (small_ < 0);
}

int Integer::mod2() const
{
    if (big_)
        return mpz_odd_p(big_->get_mpz_t()) ? 1 : 0;
    return static_cast<int>(small_ & 1);
}

Integer Integer::abs() const
{
    return sign() < 0 ? -*this : *this;
}

mpz_class Integer::to_mpz() const
{
    return big_ ? *big_ : mpz_from_int64(small_);
}

std::string Integer::to_string() const
{
    return big_ ? big_->get_str() : std::to_string(small_);
}

Integer& Integer::operator+=(const Integer& rhs)
{
    if (!big_ && !rhs.big_) {
        std::int64_t out;
        if (!__builtin_add_overflow(small_, rhs.small_, &out)) {
            small_ = out;
            return *this;
        }
    }
    big_ = std::make_unique<mpz_class>(to_mpz() + rhs.to_mpz());
    normalize();
    return *this;
}

Integer& Integer::operator-=(const Integer& rhs)
{
    if (!big_ && !rhs.big_) {
        std::int64_t out;
        if (!__builtin_sub_overflow(small_, rhs.small_, &out)) {
            small_ = out;
            return *this;
        }
    }
    big_ = std::make_unique<mpz_class>(to_mpz() - rhs.to_mpz());
    normalize();
    return *this;
}

Integer& Integer::operator*=(const Integer& rhs)
{
    if (!big_ && !rhs.big_) {
        std::int64_t out;
        if (!__builtin_mul_overflow(small_, rhs.small_, &out)) {
            small_ = out;
            return *this;
        }
    }
    big_ = std::make_unique<mpz_class>(to_mpz() * rhs.to_mpz());
    normalize();
    return *this;
}

Integer Integer::operator-() const
{
    if (!big_ && small_ != std::numeric_limits<std::int64_t>::min())
        return Integer(static_cast<long long>(-small_));
    return Integer(mpz_class(-to_mpz()));
}

bool operator==(const Integer& a, const Integer& b)
{
    if (!a.big_ && !b.big_)
        return a.small_ == b.small_;
    // normalized representations never mix small and big for the same value
    if (!a.big_ || !b.big_)
        return false;
    return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b)
{
    if (!a.big_ && !b.big_)
        return a.small_ <=> b.small_;
    int c = cmp(a.to_mpz(), b.to_mpz());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

void Integer::divmod(const Integer& a, const Integer& b, Integer& q, Integer& r)
{
    if (b.is_zero())
        throw std::domain_error("Integer division by zero");
    if (!a.big_ && !b.big_ &&
        !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
        std::int64_t qq = a.small_ / b.small_;
        std::int64_t rr = a.small_ % b.small_;
        if (rr < 0) {
            if (b.small_ > 0) {
                rr += b.small_;
                qq -= 1;
            } else {
                rr -= b.small_;
                qq += 1;
            }
        }
        q = Integer(static_cast<long long>(qq));
        r = Integer(static_cast<long long>(rr));
        return;
    }
    mpz_class qq, rr;
    mpz_class am = a.to_mpz(), bm = b.to_mpz();
    mpz_fdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
    if (sgn(rr) < 0) {  // only when b < 0
        qq += 1;
        rr -= bm;
    }
    q = Integer(qq);
    r = Integer(rr);
}

Integer Integer::divexact(const Integer& a, const Integer& b)
{
    if (!a.big_ && !b.big_ && !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1))
        return Integer(static_cast<long long>(a.small_ / b.small_));
    mpz_class out;
    mpz_class am = a.to_mpz(), bm = b.to_mpz();
    mpz_divexact(out.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
    return Integer(out);
}

Integer Integer::mod(const Integer& a, const Integer& b)
{
    Integer q, r;
    divmod(a, b, q, r);
    return r;
}

Integer Integer::gcd(const Integer& a, const Integer& b)
{
    mpz_class out;
    mpz_class am = a.to_mpz(), bm = b.to_mpz();
    mpz_gcd(out.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
    return Integer(out);
}

bool Integer::divides(const Integer& other) const
{
    if (is_zero())
        return other.is_zero();
    return mod(other, *this).is_zero();
}

std::ostream& operator<<(std::ostream& os, const Integer& v)
{
    return os << v.to_string();
}

}  // namespace cohomotopy
