#include "slnc/gf.hpp"

#include <ostream>
#include <string>

#include "slnc/error.hpp"

namespace slnc {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Field::Field(std::uint64_t q) {
    if (q > kMaxOrder || !is_prime(q))
        throw InputError("field order " + std::to_string(q) + " is not a prime below 2^31");
    q_ = static_cast<std::uint32_t>(q);
}

Elem Field::elem(std::int64_t v) const { return Elem(reduce(v), q_); }
Elem Field::zero() const { return Elem(0, q_); }
Elem Field::one() const { return Elem(1 % q_, q_); }

Value Field::inv(Value a) const {
    if (a == 0) throw Error("inverse of zero requested");
    std::int64_t r0 = q_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        r0 = r1;
        r1 = r2;
        std::int64_t t2 = t0 - k * t1;
        t0 = t1;
        t1 = t2;
    }
    return reduce(t0);
}

Value Field::pow(Value a, std::uint64_t e) const noexcept {
    Value result = 1 % q_;
    while (e > 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

namespace {
Field common(const Elem& a, const Elem& b) {
    if (a.order() != b.order()) throw FieldMismatch();
    return Field(a.order());
}
}  // namespace

Elem add(const Elem& a, const Elem& b) { return Elem(common(a, b).add(a.value(), b.value()), a.order()); }
Elem sub(const Elem& a, const Elem& b) { return Elem(common(a, b).sub(a.value(), b.value()), a.order()); }
Elem mul(const Elem& a, const Elem& b) { return Elem(common(a, b).mul(a.value(), b.value()), a.order()); }
Elem neg(const Elem& a) { return Elem(a.field().neg(a.value()), a.order()); }
Elem inv(const Elem& a) { return Elem(a.field().inv(a.value()), a.order()); }
Elem pow(const Elem& a, std::uint64_t e) { return Elem(a.field().pow(a.value(), e), a.order()); }

std::ostream& operator<<(std::ostream& os, const Elem& e) { return os << e.value(); }

}  // namespace slnc
