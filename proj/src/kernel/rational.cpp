#include "weylith/kernel/rational.hpp"

#include "weylith/errors.hpp"

#include <cctype>

namespace weylith {

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw InvalidInput("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("not a rational number: '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    mpz_class zn(n, 10), zd(std::string(den), 10);
    if (zd == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(zn, zd);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::inverse() const
{
    if (is_zero())
        throw InvalidInput("division by zero");
    return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw InvalidInput("division by zero");
    v_ /= o.v_;
    return *this;
}

}  // namespace weylith
