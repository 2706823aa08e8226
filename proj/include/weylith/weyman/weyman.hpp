#pragma once

#include "weylith/algebra/exterior.hpp"
#include "weylith/algebra/sheaf.hpp"
#include "weylith/kernel/poly.hpp"
#include "weylith/tate/tate.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace weylith {

/// ^wedge K^ell (x) K^multiplicity (x) A_ell(-wedge).
struct ASummand {
    int wedge = 0;
    std::size_t multiplicity = 0;
    int twist() const { return -wedge; }
    friend bool operator==(const ASummand&, const ASummand&) = default;
};

/// Free graded A_ell-module. Inside a summand, basis element (I, h) sits at
/// rank(I) * multiplicity + h.
class AFreeModule {
public:
    AFreeModule() = default;
    /// Sorts by ascending wedge degree, merges equal ones and drops summands that vanish
    /// (zero multiplicity or wedge degree outside [0, ell]).
    AFreeModule(int ell, std::vector<ASummand> summands);

    int ell() const { return ell_; }
    const std::vector<ASummand>& summands() const { return summands_; }
    bool is_zero() const { return summands_.empty(); }
    std::size_t rank() const;
    std::size_t summand_rank(std::size_t s) const;
    std::size_t offset(std::size_t s) const;
    std::size_t find_wedge(int wedge) const;

    friend bool operator==(const AFreeModule&, const AFreeModule&) = default;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    int ell_ = 1;
    std::vector<ASummand> summands_;
};

/// W_ell(hat-E(j) (x) K^mult) = ^j K^ell (x) K^mult (x) A_ell(-j).
AFreeModule w_on_object(int j, std::size_t mult, int ell);
AFreeModule w_on_object(const FreeEModule& f, int ell);

/// Degree-0 map of free A_ell-modules; columns index the source basis.
struct AMap {
    AFreeModule source;
    AFreeModule target;
    PolyMatrix matrix;

    /// Sub-matrix from source summand s to target summand t.
    PolyMatrix block(std::size_t s, std::size_t t) const;
};

/// W_ell(phi). A block hat-E(a) -> hat-E(b) with forms omega becomes the map
/// v_I (x) e_h -> sum_{J, h'} v_J (x) e_{h'} sum_{J c I} sgn(J, I \ J) sum_T omega_{h'h,T} det x[I \ J, T].
AMap w_on_map(const ExteriorMap& phi, int ell);

/// W_ell applied to a Tate segment: terms for p in [p_lo, p_hi], the full range
/// where the term formula allows nonzero modules.
struct WeymanComplex {
    int ell = 1;
    int dimW = 2;
    int d_supp = 0;
    int p_lo = 0;
    int p_hi = -1;
    std::vector<AFreeModule> terms;  // index p - p_lo
    std::vector<AMap> maps;          // index p - p_lo, p < p_hi
    nlohmann::json provenance;

    /// The zero module outside [p_lo, p_hi].
    AFreeModule term(int p) const;
    const AMap& differential(int p) const;
    /// Positions p of nonzero terms, ascending.
    std::vector<int> support() const;
};

/// Degree of the Hilbert polynomial, read from h^0(F(k)) = rank T^k for
/// k in [r, r + N]; -1 for the zero sheaf. Throws WindowTooNarrow if the
/// segment stops earlier.
int infer_support_dim(const TateSegment& seg);

/// Tate window needed by weyman_complex for every ell in [1, ell_max].
std::pair<int, int> weyman_window(const SheafSpec& spec, const AmbientSpace& ambient, int ell_max);

/// Throws ExcludedCase unless 1 <= ell <= dimW - 1.
void check_ell(int ell, int dimW);

WeymanComplex weyman_complex(const SheafSpec& spec, const AmbientSpace& ambient, int ell);

/// Builds the complex from an existing segment covering [-ell, N]; d_supp is taken as given.
WeymanComplex weyman_complex_from_segment(const TateSegment& seg, int ell, int d_supp);

struct VerificationReport {
    bool composition_zero = true;
    bool minimal = true;
    bool support = true;
    bool homogeneous = true;
    std::vector<std::string> failures;

    bool ok() const { return composition_zero && minimal && support && homogeneous; }
    nlohmann::json to_json() const;
};

VerificationReport verify_complex(const WeymanComplex& wc);

/// A map of free E-modules with uniformly random small-integer forms in every block
/// whose twist drop is nonnegative.
ExteriorMap random_exterior_map(int dimW, const std::vector<Summand>& source, const std::vector<Summand>& target,
                                std::mt19937_64& rng);

struct ProbeResult {
    bool pass = true;
    int trials = 0;
    std::optional<std::string> witness;
};

/// Draws `trials` random nonzero phi : hat-E(a) (x) K^h -> hat-E(b) (x) K^{h'} and
/// checks W_ell(phi) != 0. Requires 0 <= b <= a <= ell and a - b <= dimW.
ProbeResult functor_injectivity_probe(int a, int b, int ell, int dimW, int trials, std::uint64_t seed);

nlohmann::json poly_to_json(const PolyA& p);
PolyA poly_from_json(const nlohmann::json& j, PolyShape shape);
nlohmann::json complex_to_json(const WeymanComplex& wc);

inline constexpr const char* kComplexFormat = "weylith.weyman-complex/1";

}  // namespace weylith
