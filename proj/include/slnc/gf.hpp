#pragma once

#include <cstdint>
#include <iosfwd>

namespace slnc {

/// Canonical representative of a prime-field element, always in [0, q).
using Value = std::uint32_t;

class Elem;

/// The prime field F_q. Orders up to 2^31 - 1 are accepted so that every
/// product of two representatives fits in 64 bits.
class Field {
public:
    static constexpr std::uint64_t kMaxOrder = (std::uint64_t{1} << 31) - 1;

    /// Throws InputError unless q is a prime in [2, kMaxOrder].
    explicit Field(std::uint64_t q);

    std::uint32_t order() const noexcept { return q_; }

    Elem elem(std::int64_t v) const;
    Elem zero() const;
    Elem one() const;

    // Raw arithmetic on canonical representatives. Inputs must already be
    // reduced; these are the hot paths used by the matrix code.
    Value reduce(std::int64_t v) const noexcept {
        auto r = v % static_cast<std::int64_t>(q_);
        return static_cast<Value>(r < 0 ? r + q_ : r);
    }
    Value add(Value a, Value b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Value>(s >= q_ ? s - q_ : s);
    }
    Value sub(Value a, Value b) const noexcept { return a >= b ? a - b : a + (q_ - b); }
    Value neg(Value a) const noexcept { return a == 0 ? 0 : q_ - a; }
    Value mul(Value a, Value b) const noexcept {
        return static_cast<Value>((std::uint64_t{a} * b) % q_);
    }
    /// Multiplicative inverse by extended Euclid. Throws on zero.
    Value inv(Value a) const;
    Value pow(Value a, std::uint64_t e) const noexcept;

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.q_ == b.q_; }

private:
    std::uint32_t q_;
};

bool is_prime(std::uint64_t n) noexcept;

/// An element tagged with the order of its field, so that mixing fields is
/// caught at runtime.
class Elem {
public:
    Elem(Value v, std::uint32_t q) : value_(v), q_(q) {}

    Value value() const noexcept { return value_; }
    std::uint32_t order() const noexcept { return q_; }
    Field field() const { return Field(q_); }

    friend bool operator==(const Elem& a, const Elem& b) noexcept {
        return a.value_ == b.value_ && a.q_ == b.q_;
    }

private:
    Value value_;
    std::uint32_t q_;
};

Elem add(const Elem& a, const Elem& b);
Elem sub(const Elem& a, const Elem& b);
Elem mul(const Elem& a, const Elem& b);
Elem neg(const Elem& a);
/// Throws Error when a is zero.
Elem inv(const Elem& a);
Elem pow(const Elem& a, std::uint64_t e);

inline Elem operator+(const Elem& a, const Elem& b) { return add(a, b); }
inline Elem operator-(const Elem& a, const Elem& b) { return sub(a, b); }
inline Elem operator*(const Elem& a, const Elem& b) { return mul(a, b); }
inline Elem operator-(const Elem& a) { return neg(a); }

std::ostream& operator<<(std::ostream& os, const Elem& e);

}  // namespace slnc
