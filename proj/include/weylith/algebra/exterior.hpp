#pragma once

#include "weylith/algebra/module.hpp"
#include "weylith/kernel/matrix.hpp"
#include "weylith/kernel/rational.hpp"
#include "weylith/kernel/wedge.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace weylith {

/// Element of ^k W^* in the lexicographic wedge basis w_T^*.
struct ExteriorForm {
    int dimW = 0;
    int degree = 0;
    std::vector<Rational> coords;  // length C(dimW, degree)

    static ExteriorForm zero(int dimW, int degree);
    static ExteriorForm basis(int dimW, const WedgeIndex& t);
    bool is_zero() const;
    friend bool operator==(const ExteriorForm&, const ExteriorForm&) = default;
};

/// omega ^ eta.
ExteriorForm wedge(const ExteriorForm& omega, const ExteriorForm& eta);

/// rows x cols matrix whose entries are forms of one fixed degree.
class FormMatrix {
public:
    FormMatrix() = default;
    FormMatrix(int dimW, int degree, std::size_t rows, std::size_t cols);

    int dimW() const { return dimW_; }
    int degree() const { return degree_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t form_size() const { return width_; }

    std::span<Rational> entry(std::size_t r, std::size_t c) { return {data_.data() + (r * cols_ + c) * width_, width_}; }
    std::span<const Rational> entry(std::size_t r, std::size_t c) const
    {
        return {data_.data() + (r * cols_ + c) * width_, width_};
    }
    ExteriorForm form(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const ExteriorForm& f);
    bool is_zero() const;

    friend bool operator==(const FormMatrix&, const FormMatrix&) = default;

private:
    int dimW_ = 0;
    int degree_ = 0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t width_ = 0;
    std::vector<Rational> data_;
};

/// Matrix product with entries multiplied as lhs ^ rhs.
FormMatrix operator*(const FormMatrix& lhs, const FormMatrix& rhs);

/// hat-E(twist) (x) K^multiplicity.
struct Summand {
    int twist = 0;
    std::size_t multiplicity = 0;
    friend bool operator==(const Summand&, const Summand&) = default;
};

/// Finite direct sum of twisted copies of hat-E, modelled as a free right E-module:
/// hat-E(j) has one generator in internal degree dimW - j and spans degrees
/// [-j, dimW - j]. The degree-d piece of a copy is ^{dimW - j - d} W^* (lex basis);
/// pieces list summands in order, then copies, then wedge basis.
class FreeEModule {
public:
    FreeEModule() = default;
    /// Summands are sorted by ascending twist; zero multiplicities are dropped and
    /// equal twists merged.
    FreeEModule(int dimW, std::vector<Summand> summands);

    int dimW() const { return dimW_; }
    const std::vector<Summand>& summands() const { return summands_; }
    bool is_zero() const { return summands_.empty(); }
    std::size_t rank() const;
    int generator_degree(std::size_t s) const { return dimW_ - summands_[s].twist; }
    /// Index of the summand with this twist, or npos.
    std::size_t find_twist(int twist) const;

    std::size_t piece_dim(int d) const;
    /// Offset of copy h of summand s inside piece d.
    std::size_t offset(int d, std::size_t s, std::size_t h) const;
    /// Range of internal degrees with nonzero pieces (lo > hi when zero).
    int lowest_degree() const;
    int highest_degree() const;

    /// Right multiplication by w_t^*: piece(d) -> piece(d - 1).
    MatQ action(int t, int d) const;

    friend bool operator==(const FreeEModule&, const FreeEModule&) = default;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    int dimW_ = 0;
    std::vector<Summand> summands_;
};

struct ExteriorBlock {
    std::size_t source = 0;  // summand index in source
    std::size_t target = 0;  // summand index in target
    FormMatrix forms;        // target multiplicity x source multiplicity, degree a - b
};

/// Degree-0 homomorphism of free E-modules: copy h of source summand hat-E(a) maps
/// to sum over h' of (copy h' of hat-E(b)) * forms(h', h).
struct ExteriorMap {
    FreeEModule source;
    FreeEModule target;
    std::vector<ExteriorBlock> blocks;

    bool is_zero() const;
    /// Block between the summands of these twists, or nullptr.
    const ExteriorBlock* find_block(int source_twist, int target_twist) const;
    /// The linear map piece_d(source) -> piece_d(target).
    MatQ slice(int d) const;
};

/// second o first.
ExteriorMap compose(const ExteriorMap& second, const ExteriorMap& first);

/// The BGG differential hat-E(-p) (x) M_p -> hat-E(-p-1) (x) M_{p+1}; the form in
/// row beta, column alpha is sum_t (w_t . alpha)_beta w_t^*.
ExteriorMap bgg_term(const DegreewiseSModule& m, int p);

/// Degreewise realization of a free module over its full support.
DegreewiseEModule to_emodule(const FreeEModule& f);

/// ker(phi) as an E-module with its embedding into phi.source.
struct EmbeddedSubmodule {
    DegreewiseEModule module;
    std::vector<MatQ> basis;  // per degree (index d - lo): columns span the kernel piece
};

EmbeddedSubmodule kernel_submodule(const ExteriorMap& phi);

}  // namespace weylith
