#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylith/cli/cli.hpp"
#include "weylith/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace weylith;
using namespace weylith::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("weylith-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

void write_file(const fs::path& p, std::size_t bytes)
{
    std::ofstream(p) << std::string(bytes, 'x');
}

}  // namespace

TEST_CASE("weyman command on omega(1)")
{
    TempDir tmp;
    const auto r = invoke({"weyman", "--sheaf", "omega:1", "--dimW", "3", "--ell", "2", "--cache-dir", tmp.path.string()});
    CHECK(r.code == exit_code::ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("format") == kComplexFormat);
    REQUIRE(j.at("terms").size() == 1);
    CHECK(j.at("terms")[0].at("p") == 0);
    CHECK(j.at("terms")[0].at("rank") == 2);
    CHECK(j.at("maps").empty());
}

TEST_CASE("exit codes")
{
    TempDir tmp;
    const std::string dir = tmp.path.string();
    auto excluded = invoke({"weyman", "--sheaf", "twist:0", "--dimW", "3", "--ell", "3", "--cache-dir", dir});
    CHECK(excluded.code == exit_code::excluded);
    CHECK(excluded.out.empty());
    CHECK(excluded.err.find("excluded") != std::string::npos);
    CHECK(invoke({"verify", "--sheaf", "twist:0", "--dimW", "4", "--ell", "4", "--cache-dir", dir}).code
          == exit_code::excluded);

    CHECK(invoke({"weyman", "--sheaf", "bogus:1", "--dimW", "3", "--ell", "1", "--cache-dir", dir}).code
          == exit_code::parse);
    CHECK(invoke({"weyman", "--dimW", "3", "--ell", "1"}).code == exit_code::parse);
    CHECK(invoke({"frobnicate"}).code == exit_code::parse);
    CHECK(invoke({"resultant", "--veronese", "2", "--f", "1,x,1", "--g", "0,1,0"}).code == exit_code::parse);
    CHECK(invoke({"tate", "--sheaf", "omega:7", "--dimW", "3", "--cache-dir", dir}).code == exit_code::parse);
    CHECK(invoke({"tate", "--sheaf", "twist:0", "--cache-dir", dir}).code == exit_code::parse);  // no dimW

    const std::string thick = R"({"variant":"quotient","generators":["w0^3"],"regularity":1})";
    const auto reg = invoke({"cohomology", "--sheaf", thick, "--dimW", "3", "--cache-dir", dir});
    CHECK(reg.code == exit_code::regularity);
    CHECK(invoke({"cohomology", "--sheaf", thick, "--dimW", "3", "--regularity", "2", "--cache-dir", dir}).code
          == exit_code::ok);

    CHECK(invoke({"--help"}).code == exit_code::ok);
}

TEST_CASE("resultant command")
{
    const auto r = invoke({"resultant", "--veronese", "2", "--f", "1,0,1", "--g", "0,1,0"});
    REQUIRE(r.code == exit_code::ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("resultant") == j.at("sylvester"));
    CHECK(j.at("agree") == true);

    const auto q = invoke({"resultant", "--veronese", "2", "--f", "-1,0,1", "--g", "1,0,1", "--symbolic"});
    REQUIRE(q.code == exit_code::ok);
    const auto jq = nlohmann::json::parse(q.out);
    CHECK(jq.at("resultant") == "4");
    CHECK(jq.at("determinant").size() > 0);

    const auto probe = invoke({"resultant", "--veronese", "3", "--trials", "30", "--field", "p", "--seed", "9"});
    REQUIRE(probe.code == exit_code::ok);
    CHECK(nlohmann::json::parse(probe.out).at("probe").at("disagreements") == 0);
    CHECK(invoke({"resultant", "--veronese", "2", "--f", "1,0", "--g", "0,1,0"}).code == exit_code::parse);
    CHECK(invoke({"resultant", "--veronese", "1", "--f", "1,0", "--g", "0,1"}).code == exit_code::excluded);
    CHECK(invoke({"resultant", "--veronese", "2", "--trials", "3", "--field", "r"}).code == exit_code::parse);
}

TEST_CASE("determinism with cold and warm cache")
{
    TempDir tmp;
    const std::vector<std::string> args = {"weyman", "--sheaf", "veronese:2", "--ell", "2", "--cache-dir",
                                           tmp.path.string()};
    const auto cold = invoke(args);
    const auto warm = invoke(args);
    auto uncached = args;
    uncached.push_back("--no-cache");
    const auto none = invoke(uncached);
    REQUIRE(cold.code == exit_code::ok);
    CHECK(cold.out == warm.out);
    CHECK(cold.out == none.out);

    const auto t1 = invoke({"tate", "--sheaf", "omega:1", "--dimW", "4", "--cache-dir", tmp.path.string()});
    const auto t2 = invoke({"tate", "--sheaf", "omega:1", "--dimW", "4", "--cache-dir", tmp.path.string()});
    CHECK(t1.code == exit_code::ok);
    CHECK(t1.out == t2.out);
}

TEST_CASE("output files and pretty printing")
{
    TempDir tmp;
    const fs::path file = tmp.path / "table.json";
    const auto r = invoke({"cohomology", "--sheaf", "twist:0", "--dimW", "3", "--output", file.string(), "--cache-dir",
                        (tmp.path / "c").string()});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.empty());
    std::ifstream is(file);
    const auto j = nlohmann::json::parse(is);
    CHECK(j.at("format") == kTableFormat);

    const auto p = invoke({"weyman", "--sheaf", "veronese:2", "--ell", "2", "--pretty", "--no-cache"});
    CHECK(p.code == exit_code::ok);
    CHECK(p.out.find("W^-1 = A(-2)^3") != std::string::npos);
}

TEST_CASE("segment cache")
{
    TempDir tmp;
    SegmentCache cache(tmp.path / "segments");
    AmbientSpace amb(3);
    const SheafSpec spec = SheafSpec::make_omega(1);
    const std::string key = SegmentCache::key(spec, 3, -2, 2);
    CHECK(key.size() == 64);
    CHECK(key != SegmentCache::key(spec, 3, -2, 3));
    CHECK_FALSE(cache.load(key));

    const TateSegment seg = cached_segment(&cache, spec, amb, -2, 2);
    CHECK(fs::exists(cache.entry_path(key)));
    const auto hit = cache.load(key);
    REQUIRE(hit);
    CHECK(segment_to_json(*hit) == segment_to_json(seg));

    // A damaged entry is ignored and replaced.
    std::ofstream(cache.entry_path(key)) << "{ not json";
    CHECK_FALSE(cache.load(key));
    const TateSegment again = cached_segment(&cache, spec, amb, -2, 2);
    CHECK(segment_to_json(again) == segment_to_json(seg));
    CHECK(cache.load(key));

    for (const auto& e : fs::directory_iterator(cache.dir()))
        CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("cache directory resolution")
{
    CHECK(resolve_cache_dir(std::string("/x/y")) == fs::path("/x/y"));
    ::setenv("WEYLITH_CACHE_DIR", "/from/env", 1);
    CHECK(resolve_cache_dir(std::nullopt) == fs::path("/from/env"));
    CHECK(resolve_cache_dir(std::string("flag")) == fs::path("flag"));
    ::unsetenv("WEYLITH_CACHE_DIR");
    CHECK(resolve_cache_dir(std::nullopt) == fs::path(".weylith-cache"));
}

TEST_CASE("cache_gc")
{
    TempDir tmp;
    SUBCASE("empty directory")
    {
        const auto rep = cache_gc(tmp.path, 0);
        CHECK(rep.removed.empty());
        CHECK(rep.kept_bytes == 0);
    }
    SUBCASE("one oversize entry")
    {
        write_file(tmp.path / "big.json", 1000);
        const auto rep = cache_gc(tmp.path, 100);
        REQUIRE(rep.removed.size() == 1);
        CHECK(rep.removed[0].first == "big.json");
        CHECK_FALSE(fs::exists(tmp.path / "big.json"));
    }
    SUBCASE("least recently used goes first and writers are untouched")
    {
        write_file(tmp.path / "old.json", 400);
        write_file(tmp.path / "new.json", 400);
        write_file(tmp.path / ".new.json.tmp-1-0", 5000);
        const auto now = fs::file_time_type::clock::now();
        fs::last_write_time(tmp.path / "old.json", now - std::chrono::hours(2));
        fs::last_write_time(tmp.path / "new.json", now - std::chrono::hours(1));
        const auto rep = cache_gc(tmp.path, 500);
        REQUIRE(rep.removed.size() == 1);
        CHECK(rep.removed[0].first == "old.json");
        CHECK(rep.kept_bytes == 400);
        CHECK(fs::exists(tmp.path / "new.json"));
        CHECK(fs::exists(tmp.path / ".new.json.tmp-1-0"));
    }
    SUBCASE("missing directory")
    {
        CHECK_THROWS_AS(cache_gc(tmp.path / "nope", 0), InvalidInput);
        CHECK(invoke({"cache-gc", "--cache-dir", (tmp.path / "nope").string(), "--max-bytes", "0"}).code
              == exit_code::parse);
    }
    SUBCASE("command")
    {
        write_file(tmp.path / "a.json", 10);
        const auto r = invoke({"cache-gc", "--cache-dir", tmp.path.string(), "--max-bytes", "0"});
        CHECK(r.code == exit_code::ok);
        CHECK(nlohmann::json::parse(r.out).at("removed").size() == 1);
    }
}
