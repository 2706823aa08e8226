#include "weylith/algebra/module.hpp"

#include "weylith/errors.hpp"

namespace weylith {

AmbientSpace::AmbientSpace(int dimW) : dimW_(dimW)
{
    if (dimW < 2)
        throw InvalidInput("dimW must be at least 2 (got " + std::to_string(dimW) + ")");
}

std::size_t DegreewiseSModule::dim(int d) const
{
    if (d < lo || d > hi)
        throw WindowTooNarrow("S-module degree " + std::to_string(d) + " outside realized window [" + std::to_string(lo)
                              + ", " + std::to_string(hi) + "]");
    return dims[static_cast<std::size_t>(d - lo)];
}

const MatQ& DegreewiseSModule::action(int t, int d) const
{
    if (d < lo || d >= hi)
        throw WindowTooNarrow("S-module action from degree " + std::to_string(d) + " outside realized window");
    return actions[static_cast<std::size_t>(d - lo)].at(static_cast<std::size_t>(t));
}

std::vector<std::string> DegreewiseSModule::commutativity_failures() const
{
    std::vector<std::string> out;
    for (int d = lo; d + 1 < hi; ++d)
        for (int t = 0; t < ambient.dimW(); ++t)
            for (int u = t + 1; u < ambient.dimW(); ++u)
                if (!(action(t, d + 1) * action(u, d) == action(u, d + 1) * action(t, d)))
                    out.push_back("w" + std::to_string(t) + " w" + std::to_string(u) + " do not commute at degree "
                                  + std::to_string(d));
    return out;
}

std::size_t DegreewiseEModule::dim(int d) const
{
    if (d < lo || d > hi)
        throw WindowTooNarrow("E-module degree " + std::to_string(d) + " outside window [" + std::to_string(lo) + ", "
                              + std::to_string(hi) + "]");
    return dims[static_cast<std::size_t>(d - lo)];
}

const MatQ& DegreewiseEModule::action(int t, int d) const
{
    if (d <= lo || d > hi)
        throw WindowTooNarrow("E-module action from degree " + std::to_string(d) + " outside window");
    return actions[static_cast<std::size_t>(d - lo)].at(static_cast<std::size_t>(t));
}

std::vector<std::string> DegreewiseEModule::exterior_relation_failures() const
{
    std::vector<std::string> out;
    for (int d = lo + 2; d <= hi; ++d)
        for (int t = 0; t < ambient.dimW(); ++t) {
            if (!(action(t, d - 1) * action(t, d)).is_zero())
                out.push_back("w" + std::to_string(t) + "* squares to nonzero at degree " + std::to_string(d));
            for (int u = t + 1; u < ambient.dimW(); ++u)
                if (!(action(t, d - 1) * action(u, d) + action(u, d - 1) * action(t, d)).is_zero())
                    out.push_back("w" + std::to_string(t) + "* w" + std::to_string(u) + "* do not anticommute at degree "
                                  + std::to_string(d));
        }
    return out;
}

}  // namespace weylith
