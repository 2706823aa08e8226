#include "weylith/algebra/spoly.hpp"

#include "weylith/errors.hpp"

#include <cctype>

namespace weylith {

int SPoly::homogeneous_degree() const
{
    int deg = -1;
    for (const auto& [e, c] : terms) {
        int d = 0;
        for (int x : e)
            d += x;
        if (deg >= 0 && d != deg)
            throw InvalidInput("polynomial is not homogeneous");
        deg = d;
    }
    return deg;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, int dimW) : text_(text), dimW_(dimW) {}

    SPoly parse()
    {
        SPoly p{dimW_, {}};
        skip();
        if (pos_ == text_.size())
            fail("empty polynomial");
        bool first = true;
        while (pos_ < text_.size()) {
            Rational sign(1);
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-')
                    sign = Rational(-1);
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [coeff, exps] = term();
            coeff *= sign;
            auto [it, inserted] = p.terms.try_emplace(exps, coeff);
            if (!inserted)
                it->second += coeff;
            if (it->second.is_zero())
                p.terms.erase(it);
            first = false;
        }
        return p;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw ParseError("polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    long integer()
    {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected digits");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1'000'000'000L)
                fail("integer too large");
            ++pos_;
        }
        skip();
        return v;
    }

    std::pair<Rational, SExponents> term()
    {
        Rational coeff(1);
        SExponents exps(static_cast<std::size_t>(dimW_), 0);
        while (true) {
            if (peek() == 'w') {
                ++pos_;
                const long var = integer();
                if (var >= dimW_)
                    fail("variable w" + std::to_string(var) + " outside w0..w" + std::to_string(dimW_ - 1));
                long e = 1;
                if (peek() == '^') {
                    ++pos_;
                    skip();
                    e = integer();
                }
                exps[static_cast<std::size_t>(var)] += static_cast<int>(e);
            } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coeff *= Rational(integer());
            } else {
                fail("expected coefficient or variable");
            }
            if (peek() != '*')
                break;
            ++pos_;
            skip();
        }
        return {coeff, exps};
    }

    std::string_view text_;
    int dimW_;
    std::size_t pos_ = 0;
};

void enumerate(int dimW, int var, int remaining, SExponents& cur, std::vector<SExponents>& out)
{
    if (var == dimW - 1) {
        cur[static_cast<std::size_t>(var)] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<std::size_t>(var)] = e;
        enumerate(dimW, var + 1, remaining - e, cur, out);
    }
}

}  // namespace

SPoly parse_spoly(std::string_view text, int dimW)
{
    return Parser(text, dimW).parse();
}

std::vector<SExponents> s_monomials(int dimW, int k)
{
    std::vector<SExponents> out;
    if (k < 0 || dimW <= 0)
        return out;
    SExponents cur(static_cast<std::size_t>(dimW), 0);
    enumerate(dimW, 0, k, cur, out);
    return out;
}

std::map<SExponents, std::size_t> s_monomial_index(int dimW, int k)
{
    std::map<SExponents, std::size_t> idx;
    auto mons = s_monomials(dimW, k);
    for (std::size_t i = 0; i < mons.size(); ++i)
        idx.emplace(std::move(mons[i]), i);
    return idx;
}

}  // namespace weylith
