#pragma once

#include "weylith/errors.hpp"
#include "weylith/kernel/rational.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>

namespace weylith {

/// Residue modulo a prime P < 2^32, stored in [0, P).
template <std::uint64_t P>
class ModP {
    static_assert(P > 2 && P < (std::uint64_t{1} << 32));

public:
    static constexpr std::uint64_t modulus = P;

    ModP() = default;
    ModP(long value)
    {
        long r = value % static_cast<long>(P);
        v_ = static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(P) : r);
    }
    ModP(int value) : ModP(static_cast<long>(value)) {}

    /// Reduction of an exact rational; the denominator must be invertible mod P.
    static ModP from_rational(const Rational& q)
    {
        mpz_class num = q.numerator() % mpz_class(static_cast<unsigned long>(P));
        mpz_class den = q.denominator() % mpz_class(static_cast<unsigned long>(P));
        if (den == 0)
            throw InvalidInput("denominator " + q.denominator().get_str() + " vanishes mod " + std::to_string(P));
        if (num < 0)
            num += static_cast<unsigned long>(P);
        return ModP::raw(num.get_ui()) / ModP::raw(den.get_ui());
    }

    static ModP raw(std::uint64_t v)
    {
        ModP m;
        m.v_ = v % P;
        return m;
    }
    static ModP zero() { return ModP(); }
    static ModP one() { return raw(1); }

    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::string str() const { return std::to_string(v_); }

    ModP pow(std::uint64_t e) const
    {
        ModP base = *this, acc = one();
        while (e) {
            if (e & 1)
                acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
    ModP inverse() const
    {
        if (v_ == 0)
            throw InvalidInput("division by zero in prime field");
        return pow(P - 2);
    }

    ModP& operator+=(const ModP& o) { v_ += o.v_; if (v_ >= P) v_ -= P; return *this; }
    ModP& operator-=(const ModP& o) { v_ += P - o.v_; if (v_ >= P) v_ -= P; return *this; }
    ModP& operator*=(const ModP& o) { v_ = (v_ * o.v_) % P; return *this; }
    ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

    friend ModP operator+(ModP a, const ModP& b) { return a += b; }
    friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
    friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
    friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
    friend ModP operator-(const ModP& a) { return raw(P - a.v_); }
    friend bool operator==(const ModP& a, const ModP& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const ModP& m) { return os << m.v_; }

private:
    std::uint64_t v_ = 0;
};

/// Default prime for fast probabilistic checks (2^31 - 1).
using Fp = ModP<2147483647ULL>;

/// Field-agnostic conversion from an exact rational.
template <class F>
F field_from_rational(const Rational& q)
{
    if constexpr (std::is_same_v<F, Rational>)
        return q;
    else
        return F::from_rational(q);
}

}  // namespace weylith
