#pragma once

#include "weylith/kernel/rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace weylith {

/// Dense exponent vector over w_0..w_N.
using SExponents = std::vector<int>;

/// Polynomial in S = Sym(W) with variables w_0..w_N.
struct SPoly {
    int dimW = 0;
    std::map<SExponents, Rational, std::greater<>> terms;

    bool is_zero() const { return terms.empty(); }
    /// Degree of a homogeneous polynomial; -1 for zero. Throws InvalidInput if inhomogeneous.
    int homogeneous_degree() const;
};

/// Parses strings such as "3*w0^2*w1 - w2^3" with integer coefficients.
/// Variables beyond w_{dimW-1} are a ParseError.
SPoly parse_spoly(std::string_view text, int dimW);

/// Monomials of degree k in dimW variables, lexicographically descending (w0^k first).
std::vector<SExponents> s_monomials(int dimW, int k);

/// Index lookup for s_monomials(dimW, k).
std::map<SExponents, std::size_t> s_monomial_index(int dimW, int k);

}  // namespace weylith
