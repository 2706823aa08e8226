#pragma once

#include "weylith/algebra/exterior.hpp"
#include "weylith/algebra/module.hpp"
#include "weylith/algebra/sheaf.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace weylith {

/// Terms T^p, p in [p_lo, p_hi], of the Tate resolution with the differentials
/// d^p : T^p -> T^{p+1} for p in [p_lo, p_hi).
struct TateSegment {
    int dimW = 0;
    int p_lo = 0;
    int p_hi = -1;
    int regularity = 0;
    std::vector<FreeEModule> terms;  // index p - p_lo
    std::vector<ExteriorMap> maps;   // index p - p_lo

    /// Throws WindowTooNarrow outside the segment.
    const FreeEModule& term(int p) const;
    const ExteriorMap& differential(int p) const;
};

/// For p >= r the term is hat-E(-p) (x) M_p with the BGG differential; exactness of
/// R(M_{>=r}) is checked at every p in [r + 1, max(p_hi, r + 2)] and a failure
/// throws RegularityFailure. Terms below r come from minimal covers of the running
/// kernel, recomputed step by step.
TateSegment tate_segment(const SheafSpec& spec, const AmbientSpace& ambient, int p_lo, int p_hi);

/// Minimal free cover F -> phi.source of ker(phi), as a map into phi.source.
ExteriorMap kernel_cover(const ExteriorMap& phi);

/// Descriptions of every violated segment invariant: shapes, d o d = 0, minimality,
/// twists compatible with 0 <= i <= N, and single-summand terms from the regularity on.
std::vector<std::string> segment_failures(const TateSegment& seg);

/// h^i(F(k)) for the (i, k) determined by the segment: p = k + i in [p_lo, p_hi].
class CohomologyTable {
public:
    CohomologyTable(int N, int p_lo, int p_hi);

    int N() const { return N_; }
    int p_lo() const { return p_lo_; }
    int p_hi() const { return p_hi_; }
    bool known(int i, int k) const;
    /// Throws InvalidInput when (i, k) is outside the segment.
    std::size_t at(int i, int k) const;
    void set(int i, int k, std::size_t value);

private:
    int N_;
    int p_lo_;
    int p_hi_;
    std::map<std::pair<int, int>, std::size_t> values_;
};

/// The multiplicity of hat-E(j) in T^p is h^{p+j}(F(-j)). Throws CorruptedSegment
/// when a twist implies a cohomological index outside [0, N].
CohomologyTable cohomology_table(const TateSegment& seg);

/// The block of d^p from hat-E(a) in T^p to hat-E(b) in T^{p+1}; a zero matrix when
/// both summands exist without a stored block, an empty matrix when either is missing.
FormMatrix extract_component(const TateSegment& seg, int p, int a, int b);

nlohmann::json segment_to_json(const TateSegment& seg);
/// Throws ParseError on malformed documents.
TateSegment segment_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const CohomologyTable& table);

inline constexpr const char* kSegmentFormat = "weylith.tate-segment/1";
inline constexpr const char* kTableFormat = "weylith.cohomology-table/1";

}  // namespace weylith
