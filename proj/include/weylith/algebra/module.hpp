#pragma once

#include "weylith/kernel/matrix.hpp"
#include "weylith/kernel/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace weylith {

/// The vector space W = K^{N+1} with basis w_0..w_N.
class AmbientSpace {
public:
    explicit AmbientSpace(int dimW);
    int dimW() const { return dimW_; }
    int N() const { return dimW_ - 1; }
    friend bool operator==(const AmbientSpace&, const AmbientSpace&) = default;

private:
    int dimW_;
};

using MatQ = DenseMatrix<Rational>;

/// Graded S-module given by based pieces M_d, d in [lo, hi], and multiplication
/// maps action(t, d) : M_d -> M_{d+1} by w_t for d in [lo, hi).
struct DegreewiseSModule {
    AmbientSpace ambient;
    int lo = 0;
    int hi = -1;
    std::vector<std::size_t> dims;             // index d - lo
    std::vector<std::vector<MatQ>> actions;    // [d - lo][t]

    /// Throws WindowTooNarrow outside [lo, hi].
    std::size_t dim(int d) const;
    const MatQ& action(int t, int d) const;

    /// Human-readable descriptions of every failed commutation w_t w_u = w_u w_t.
    std::vector<std::string> commutativity_failures() const;
};

/// Graded E-module with pieces N_d, d in [lo, hi], and action(t, d) : N_d -> N_{d-1}
/// by w_t^* for d in (lo, hi]. closed_above means N_d = 0 for d > hi.
struct DegreewiseEModule {
    AmbientSpace ambient;
    int lo = 0;
    int hi = -1;
    bool closed_above = true;
    std::vector<std::size_t> dims;
    std::vector<std::vector<MatQ>> actions;  // [d - lo][t], entry for d = lo is empty

    std::size_t dim(int d) const;
    const MatQ& action(int t, int d) const;

    /// Failures of w_t^* w_u^* = -w_u^* w_t^* and (w_t^*)^2 = 0.
    std::vector<std::string> exterior_relation_failures() const;
};

}  // namespace weylith
