#pragma once

#include "weylith/algebra/sheaf.hpp"
#include "weylith/resultant/resultant.hpp"
#include "weylith/tate/tate.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace weylith::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int parse = 2;
inline constexpr int excluded = 3;
inline constexpr int regularity = 4;
inline constexpr int invariant = 5;
}  // namespace exit_code

enum class Command { Cohomology, Tate, Weyman, Verify, Resultant, CacheGc };

struct JobSpec {
    Command command = Command::Cohomology;
    std::optional<SheafSpec> sheaf;
    std::optional<int> dimW;  // defaults to d + 1 for veronese sheaves
    int ell = 1;
    std::optional<int> p_lo;
    std::optional<int> p_hi;
    FieldChoice field = FieldChoice::Rational;
    std::uint64_t seed = 1;
    std::optional<std::string> output;
    bool pretty = false;
    std::optional<std::string> cache_dir;
    bool no_cache = false;

    // resultant
    int degree = 2;
    std::vector<Rational> f;
    std::vector<Rational> g;
    int trials = 0;
    bool symbolic = false;

    // cache-gc
    std::uintmax_t max_bytes = 0;
};

/// Executes one job; artifacts go to job.output or `out`, diagnostics to `err`.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs the job.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::string_view data);

/// Flag value, else $WEYLITH_CACHE_DIR, else ".weylith-cache".
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

/// Content-addressed store of Tate segments. Entries are `<key>.json`; writers stage
/// into a hidden temporary file in the same directory and rename it into place.
class SegmentCache {
public:
    explicit SegmentCache(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }
    static std::string key(const SheafSpec& spec, int dimW, int p_lo, int p_hi);
    std::filesystem::path entry_path(const std::string& key) const;

    /// The stored segment, or nothing when absent or unreadable. A hit refreshes the
    /// entry's modification time so garbage collection sees it as recently used.
    std::optional<TateSegment> load(const std::string& key) const;
    void store(const std::string& key, const TateSegment& seg) const;

private:
    std::filesystem::path dir_;
};

/// Segment for (spec, window), served from the cache when possible.
TateSegment cached_segment(const SegmentCache* cache, const SheafSpec& spec, const AmbientSpace& ambient, int p_lo,
                           int p_hi);

struct GcReport {
    std::vector<std::pair<std::string, std::uintmax_t>> removed;
    std::uintmax_t kept_bytes = 0;
    nlohmann::json to_json() const;
};

/// Removes least recently used entries until the total size is at most max_bytes.
/// Temporary files of in-flight writers are neither counted nor removed.
GcReport cache_gc(const std::filesystem::path& dir, std::uintmax_t max_bytes);

}  // namespace weylith::cli
