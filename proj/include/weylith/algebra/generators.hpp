#pragma once

#include "weylith/algebra/exterior.hpp"
#include "weylith/algebra/module.hpp"

#include <utility>
#include <vector>

namespace weylith {

/// Minimal homogeneous generators of an E-module, found from the top degree down.
struct GeneratorCover {
    struct Block {
        int degree = 0;
        MatQ elements;  // columns: generators, as vectors in piece(degree)
    };
    std::vector<Block> blocks;  // descending degree, empty blocks omitted

    /// (degree, number of generators) pairs, descending degree.
    std::vector<std::pair<int, std::size_t>> counts() const;
    /// The covering free module: a generator in degree d is a copy of hat-E(dimW - d).
    FreeEModule free_module(int dimW) const;
};

/// Generators in degree d span a complement of sum_t w_t^* N_{d+1} inside N_d; the
/// complement uses the first standard coordinates that are independent, so the
/// result is deterministic. Throws WindowTooNarrow if the module is open above and a
/// generator lands in its top degree.
GeneratorCover e_minimal_generators(const DegreewiseEModule& m);

/// Per-degree dimension of the submodule spanned by the cover (index d - m.lo).
std::vector<std::size_t> generated_dims(const DegreewiseEModule& m, const GeneratorCover& cover);

}  // namespace weylith
