#include "weylith/kernel/poly.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

namespace weylith {

MonomialA::MonomialA(std::vector<Factor> factors)
{
    std::sort(factors.begin(), factors.end());
    for (auto [v, e] : factors) {
        if (e == 0)
            continue;
        if (!factors_.empty() && factors_.back().first == v)
            factors_.back().second = static_cast<std::uint16_t>(factors_.back().second + e);
        else
            factors_.emplace_back(v, e);
    }
}

int MonomialA::degree() const
{
    int d = 0;
    for (auto [v, e] : factors_)
        d += e;
    return d;
}

int MonomialA::exponent(int var) const
{
    for (auto [v, e] : factors_)
        if (v == var)
            return e;
    return 0;
}

std::vector<int> MonomialA::dense(int num_vars) const
{
    std::vector<int> out(static_cast<std::size_t>(num_vars), 0);
    for (auto [v, e] : factors_)
        out[v] = e;
    return out;
}

MonomialA operator*(const MonomialA& a, const MonomialA& b)
{
    MonomialA out;
    auto& f = out.factors_;
    f.reserve(a.factors_.size() + b.factors_.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() || j < b.factors_.size()) {
        if (j == b.factors_.size() || (i < a.factors_.size() && a.factors_[i].first < b.factors_[j].first))
            f.push_back(a.factors_[i++]);
        else if (i == a.factors_.size() || b.factors_[j].first < a.factors_[i].first)
            f.push_back(b.factors_[j++]);
        else {
            f.emplace_back(a.factors_[i].first, static_cast<std::uint16_t>(a.factors_[i].second + b.factors_[j].second));
            ++i;
            ++j;
        }
    }
    return out;
}

bool GradedLexGreater::operator()(const MonomialA& a, const MonomialA& b) const
{
    const int da = a.degree(), db = b.degree();
    if (da != db)
        return da > db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() && j < fb.size()) {
        if (fa[i].first == fb[j].first) {
            if (fa[i].second != fb[j].second)
                return fa[i].second > fb[j].second;
            ++i;
            ++j;
        } else {
            return fa[i].first < fb[j].first;
        }
    }
    return j == fb.size() && i < fa.size();
}

PolyA PolyA::constant(PolyShape shape, const Rational& c)
{
    PolyA p(shape);
    p.add_term(MonomialA(), c);
    return p;
}

PolyA PolyA::variable(PolyShape shape, int s, int t)
{
    if (s < 0 || s >= shape.ell || t < 0 || t >= shape.dimW)
        throw ShapeMismatch("variable (" + std::to_string(s) + "," + std::to_string(t) + ") outside shape");
    PolyA p(shape);
    p.add_term(MonomialA::variable(shape.var(s, t)), Rational(1));
    return p;
}

void PolyA::add_term(const MonomialA& m, const Rational& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

int PolyA::degree() const
{
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

bool PolyA::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const int d = terms_.begin()->first.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

Rational PolyA::constant_term() const
{
    auto it = terms_.find(MonomialA());
    return it == terms_.end() ? Rational() : it->second;
}

void PolyA::check_shape(const PolyA& o) const
{
    if (!(shape_ == o.shape_))
        throw ShapeMismatch("polynomials over different rings");
}

PolyA& PolyA::operator+=(const PolyA& o)
{
    check_shape(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

PolyA& PolyA::operator-=(const PolyA& o)
{
    check_shape(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

PolyA& PolyA::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

PolyA operator*(const PolyA& a, const PolyA& b)
{
    a.check_shape(b);
    PolyA out(a.shape_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(ma * mb, ca * cb);
    return out;
}

std::string PolyA::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        if (!first)
            os << (coeff.sign() < 0 ? " - " : " + ");
        else if (coeff.sign() < 0)
            os << "-";
        if (coeff.sign() < 0)
            coeff = -coeff;
        first = false;
        const bool unit = coeff == Rational(1);
        if (!unit || m.factors().empty())
            os << coeff;
        bool need_star = !unit;
        for (auto [v, e] : m.factors()) {
            if (need_star)
                os << "*";
            os << "x" << v / shape_.dimW << v % shape_.dimW;
            if (e > 1)
                os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

bool PolyMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const PolyA& p) { return p.is_zero(); });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw ShapeMismatch("polynomial matrix product shape mismatch");
    PolyMatrix c(a.shape_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const PolyA& x = a(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    c(i, j) += x * b(k, j);
        }
    return c;
}

PolyA determinant(const PolyMatrix& m)
{
    const std::size_t n = m.rows();
    if (n != m.cols())
        throw ShapeMismatch("determinant of non-square polynomial matrix");
    if (n > 20)
        throw InvalidInput("determinant: matrix too large for subset expansion");
    if (n == 0)
        return PolyA::constant(m.shape(), Rational(1));
    // minors[S] = det(rows 0..|S|-1, columns S)
    std::unordered_map<std::uint32_t, PolyA> minors;
    minors.emplace(0u, PolyA::constant(m.shape(), Rational(1)));
    for (std::size_t k = 0; k < n; ++k) {
        std::unordered_map<std::uint32_t, PolyA> next;
        for (const auto& [mask, minor] : minors) {
            if (minor.is_zero())
                continue;
            for (std::size_t c = 0; c < n; ++c) {
                const std::uint32_t bit = 1u << c;
                if ((mask & bit) || m(k, c).is_zero())
                    continue;
                // Column c lands at position pos within the enlarged subset.
                const int pos = std::popcount(mask & (bit - 1));
                PolyA term = minor * m(k, c);
                if ((static_cast<int>(k) + pos) % 2)
                    term *= Rational(-1);
                auto [it, inserted] = next.try_emplace(mask | bit, std::move(term));
                if (!inserted)
                    it->second += term;
            }
        }
        minors = std::move(next);
    }
    auto it = minors.find((1u << n) - 1u);
    return it == minors.end() ? PolyA(m.shape()) : it->second;
}

namespace {

void enumerate_exponents(int num_vars, int var, int remaining, std::vector<int>& cur, std::vector<MonomialA>& out)
{
    if (var == num_vars - 1) {
        cur[static_cast<std::size_t>(var)] = remaining;
        std::vector<MonomialA::Factor> f;
        for (int v = 0; v < num_vars; ++v)
            if (cur[static_cast<std::size_t>(v)])
                f.emplace_back(static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(cur[static_cast<std::size_t>(v)]));
        out.emplace_back(std::move(f));
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<std::size_t>(var)] = e;
        enumerate_exponents(num_vars, var + 1, remaining - e, cur, out);
    }
}

}  // namespace

std::vector<MonomialA> monomials_of_degree(int num_vars, int k)
{
    std::vector<MonomialA> out;
    if (k < 0 || num_vars <= 0)
        return out;
    std::vector<int> cur(static_cast<std::size_t>(num_vars), 0);
    enumerate_exponents(num_vars, 0, k, cur, out);
    return out;
}

}  // namespace weylith
