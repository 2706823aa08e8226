#pragma once

#include <cstddef>
#include <vector>

namespace weylith {

/// Strictly increasing index list; names the basis vector v_{i1} ^ ... ^ v_{ik}.
using WedgeIndex = std::vector<int>;

std::size_t binomial(long n, long k);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<WedgeIndex> wedge_basis(int n, int k);

/// Position of `subset` in wedge_basis(n, subset.size()).
std::size_t wedge_rank(const WedgeIndex& subset, int n);

/// Sign of the permutation whose bottom row is (I, I') for a split of {0..a-1}.
/// Throws InvalidInput when I and I' overlap or do not cover {0..a-1}.
int shuffle_sign(const WedgeIndex& first, const WedgeIndex& second);

/// Inversion parity of the word (I, I') for disjoint increasing lists with
/// arbitrary union. Returns 0 when the lists share an index.
int concat_sign(const WedgeIndex& first, const WedgeIndex& second);

/// Sorted union of two disjoint increasing lists.
WedgeIndex wedge_union(const WedgeIndex& first, const WedgeIndex& second);

/// Complement of `sub` inside `whole` (both increasing; `sub` must be contained).
WedgeIndex wedge_complement(const WedgeIndex& whole, const WedgeIndex& sub);

}  // namespace weylith
