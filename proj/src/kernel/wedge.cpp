#include "weylith/kernel/wedge.hpp"

#include "weylith/errors.hpp"

#include <algorithm>
#include <iterator>

namespace weylith {

std::size_t binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (long i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

std::vector<WedgeIndex> wedge_basis(int n, int k)
{
    std::vector<WedgeIndex> out;
    if (k < 0 || k > n)
        return out;
    WedgeIndex cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::size_t wedge_rank(const WedgeIndex& subset, int n)
{
    const long k = static_cast<long>(subset.size());
    std::size_t rank = 0;
    int prev = -1;
    for (long j = 0; j < k; ++j) {
        for (int x = prev + 1; x < subset[static_cast<std::size_t>(j)]; ++x)
            rank += binomial(n - 1 - x, k - 1 - j);
        prev = subset[static_cast<std::size_t>(j)];
    }
    return rank;
}

int concat_sign(const WedgeIndex& first, const WedgeIndex& second)
{
    // Inversions only occur across the two lists since each is increasing.
    std::size_t inversions = 0;
    std::size_t j = 0;
    for (int x : first) {
        while (j < second.size() && second[j] < x)
            ++j;
        if (j < second.size() && second[j] == x)
            return 0;
        inversions += j;
    }
    return inversions % 2 ? -1 : 1;
}

int shuffle_sign(const WedgeIndex& first, const WedgeIndex& second)
{
    const int a = static_cast<int>(first.size() + second.size());
    auto increasing = [](const WedgeIndex& v) { return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end(); };
    if (!increasing(first) || !increasing(second))
        throw InvalidInput("shuffle_sign: index lists must be strictly increasing");
    WedgeIndex all = first;
    all.insert(all.end(), second.begin(), second.end());
    std::sort(all.begin(), all.end());
    for (int i = 0; i < a; ++i)
        if (all[static_cast<std::size_t>(i)] != i)
            throw InvalidInput("shuffle_sign: (I, I') must partition {0.." + std::to_string(a - 1) + "}");
    return concat_sign(first, second);
}

WedgeIndex wedge_union(const WedgeIndex& first, const WedgeIndex& second)
{
    WedgeIndex out;
    out.reserve(first.size() + second.size());
    std::merge(first.begin(), first.end(), second.begin(), second.end(), std::back_inserter(out));
    return out;
}

WedgeIndex wedge_complement(const WedgeIndex& whole, const WedgeIndex& sub)
{
    WedgeIndex out;
    std::set_difference(whole.begin(), whole.end(), sub.begin(), sub.end(), std::back_inserter(out));
    return out;
}

}  // namespace weylith
