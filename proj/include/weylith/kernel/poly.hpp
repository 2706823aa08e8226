#pragma once

#include "weylith/errors.hpp"
#include "weylith/kernel/matrix.hpp"
#include "weylith/kernel/modp.hpp"
#include "weylith/kernel/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace weylith {

/// Shape of A_ell = Sym(K^ell (x) W^*): variable (s, t) is e_s (x) w_t^*, flat index s * dimW + t.
struct PolyShape {
    int ell = 1;
    int dimW = 2;

    int num_vars() const { return ell * dimW; }
    int var(int s, int t) const { return s * dimW + t; }
    friend bool operator==(const PolyShape&, const PolyShape&) = default;
};

/// Sparse monomial: (variable, exponent) pairs sorted by variable, no zero exponents.
class MonomialA {
public:
    using Factor = std::pair<std::uint16_t, std::uint16_t>;

    MonomialA() = default;
    explicit MonomialA(std::vector<Factor> factors);
    static MonomialA variable(int v) { return MonomialA({{static_cast<std::uint16_t>(v), 1}}); }

    const std::vector<Factor>& factors() const { return factors_; }
    int degree() const;
    int exponent(int var) const;
    std::vector<int> dense(int num_vars) const;

    friend MonomialA operator*(const MonomialA& a, const MonomialA& b);
    friend bool operator==(const MonomialA&, const MonomialA&) = default;

private:
    std::vector<Factor> factors_;
};

/// Graded-lex order: higher degree first, then larger exponent on the lower variable index.
struct GradedLexGreater {
    bool operator()(const MonomialA& a, const MonomialA& b) const;
};

/// Element of A_ell with exact rational coefficients; terms iterate leading term first.
class PolyA {
public:
    using Terms = std::map<MonomialA, Rational, GradedLexGreater>;

    PolyA() = default;
    explicit PolyA(PolyShape shape) : shape_(shape) {}
    static PolyA constant(PolyShape shape, const Rational& c);
    static PolyA variable(PolyShape shape, int s, int t);

    const PolyShape& shape() const { return shape_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c * m, dropping the term if it cancels.
    void add_term(const MonomialA& m, const Rational& c);

    /// Highest total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;
    /// Coefficient of the constant monomial.
    Rational constant_term() const;

    PolyA& operator+=(const PolyA& o);
    PolyA& operator-=(const PolyA& o);
    PolyA& operator*=(const Rational& c);
    friend PolyA operator+(PolyA a, const PolyA& b) { return a += b; }
    friend PolyA operator-(PolyA a, const PolyA& b) { return a -= b; }
    friend PolyA operator*(PolyA a, const Rational& c) { return a *= c; }
    friend PolyA operator*(const PolyA& a, const PolyA& b);
    friend PolyA operator-(const PolyA& a) { return a * Rational(-1); }
    friend bool operator==(const PolyA& a, const PolyA& b) { return a.shape_ == b.shape_ && a.terms_ == b.terms_; }

    /// Ring homomorphism A_ell -> F given by the value of each variable (flat index).
    template <class F>
    F evaluate(std::span<const F> point) const
    {
        if (point.size() != static_cast<std::size_t>(shape_.num_vars()))
            throw ShapeMismatch("evaluation point has " + std::to_string(point.size()) + " coordinates, expected "
                                + std::to_string(shape_.num_vars()));
        F total(0);
        for (const auto& [m, c] : terms_) {
            F term = field_from_rational<F>(c);
            for (auto [v, e] : m.factors())
                for (int i = 0; i < e; ++i)
                    term *= point[v];
            total += term;
        }
        return total;
    }

    std::string str() const;

private:
    void check_shape(const PolyA& o) const;

    PolyShape shape_;
    Terms terms_;
};

/// Matrix of polynomials, row-major.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(PolyShape shape, std::size_t rows, std::size_t cols)
        : shape_(shape), rows_(rows), cols_(cols), data_(rows * cols, PolyA(shape))
    {
    }

    const PolyShape& shape() const { return shape_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    PolyA& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const PolyA& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    bool is_zero() const;

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

    template <class F>
    DenseMatrix<F> evaluate(std::span<const F> point) const
    {
        DenseMatrix<F> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = (*this)(i, j).evaluate<F>(point);
        return out;
    }

private:
    PolyShape shape_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<PolyA> data_;
};

/// Exact determinant by Laplace expansion over column subsets (fine for n <= ~12).
PolyA determinant(const PolyMatrix& m);

/// Monomials of total degree k in `num_vars` variables, in graded-lex order.
std::vector<MonomialA> monomials_of_degree(int num_vars, int k);

}  // namespace weylith
