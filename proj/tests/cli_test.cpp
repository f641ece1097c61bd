#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sumsets/cli/atlas.hpp"
#include "sumsets/cli/cache.hpp"
#include "sumsets/cli/commands.hpp"
#include "sumsets/errors.hpp"

using namespace sumsets;
using namespace sumsets::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Run capture(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

Run sumset(const std::string& lit, unsigned h, SumsetOptions o = {}) {
  return capture([&](auto& out, auto& err) { return cmd_sumset(lit, h, o, out, err); });
}

Run construct(const std::string& family, std::vector<std::string> params) {
  return capture([&](auto& out, auto& err) { return cmd_construct(family, params, out, err); });
}

Run range(unsigned h, std::size_t k, const RangeOptions& o) {
  return capture([&](auto& out, auto& err) { return cmd_range(h, k, o, out, err); });
}

RangeOptions complete() {
  RangeOptions o;
  o.complete = true;
  return o;
}

RangeOptions bounded(std::int64_t n) {
  RangeOptions o;
  o.bound = n;
  return o;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("sumsets_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(SumsetCommand, PrintsSizeAndIntervals) {
  auto r = sumset("{0,1,3}", 3);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "size 9; intervals [0,7] [9,9]\n");
  r = sumset("{0,1,2}", 0);
  EXPECT_EQ(r.out, "size 1; intervals [0,0]\n");
}

TEST(SumsetCommand, OracleAgrees) {
  const auto r = sumset("{0,1,4}", 3, {true, false});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("size 10; oracle agrees"), std::string::npos) << r.out;
}

TEST(SumsetCommand, NegativeElementsKeepTheirValues) {
  const auto r = sumset("{ -2, 0, 1 }", 2, {false, true});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("size 6; intervals [-4,-4] [-2,2]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[-2,2] length 5"), std::string::npos);
}

TEST(SumsetCommand, Errors) {
  auto r = sumset("{0,x}", 2);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  r = sumset("{}", 2);
  EXPECT_NE(r.code, 0);
  r = sumset("{0,100000000}", 10);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("capacity"), std::string::npos) << r.err;
}

TEST(ConstructCommand, TwoInterval) {
  const auto r = construct("two-interval", {"a=2", "b=4", "c=0", "h=3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("witness {0,1,2,4}"), std::string::npos);
  EXPECT_NE(r.out.find("size 12, verified"), std::string::npos) << r.out;
}

TEST(ConstructCommand, Progression) {
  const auto r = construct("progression", {"a=2", "l=2", "b=3", "h=2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("witness {0,1,3,4}"), std::string::npos);
  EXPECT_NE(r.out.find("size 9, verified"), std::string::npos) << r.out;
}

TEST(ConstructCommand, NamesViolatedConstraint) {
  const auto r = construct("two-interval", {"a=2", "b=2", "c=0", "h=3"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("requires a < b"), std::string::npos) << r.err;
}

TEST(ConstructCommand, MirroredAndEqualEnds) {
  auto r = construct("two-interval", {"a=1", "b=5", "c=3", "h=3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("witness {0,1,5,6,7,8}"), std::string::npos);
  EXPECT_NE(r.out.find("size 24, verified"), std::string::npos) << r.out;
  r = construct("two-interval", {"a=2", "b=6", "c=2", "h=3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("progression"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verified"), std::string::npos) << r.out;
}

TEST(ConstructCommand, BadParameters) {
  EXPECT_NE(construct("two-interval", {"a=2", "b=5", "h=3"}).code, 0);
  EXPECT_NE(construct("two-interval", {"a=2", "b=5", "c=0", "h=3", "z=1"}).code, 0);
  EXPECT_NE(construct("spiral", {"h=3"}).code, 0);
  EXPECT_NE(construct("progression", {"a=2", "l=2", "b=x", "h=3"}).code, 0);
}

TEST(RangeCommand, ThreeThreeComplete) {
  const auto r = range(3, 3, complete());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("{7, 9, 10}; missing: 8; complete"), std::string::npos) << r.out;
}

TEST(RangeCommand, TwoFiveIsAnInterval) {
  const auto r = range(2, 5, complete());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[9, 15]; complete"), std::string::npos) << r.out;
}

TEST(RangeCommand, ThreeFourBoundedIsLabelledLowerBound) {
  const auto r = range(3, 4, bounded(64));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verified members (lower bound set)"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("; complete"), std::string::npos);
}

TEST(RangeCommand, ThreeFourCompleteIsRefused) {
  const auto r = range(3, 4, complete());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("--max-sets"), std::string::npos) << r.err;
}

TEST(RangeCommand, FlagConflicts) {
  auto o = complete();
  o.bound = 10;
  EXPECT_NE(range(3, 3, o).code, 0);
  EXPECT_NE(range(3, 3, RangeOptions{}).code, 0);
  EXPECT_NE(range(3, 5, bounded(3)).code, 0);
  auto r = bounded(50);
  r.resume = true;
  ::unsetenv(kCacheDirEnv);
  EXPECT_NE(range(3, 3, r).code, 0);
}

TEST(RangeCommand, JsonOutputIsDeterministic) {
  auto o = complete();
  o.format = Format::Json;
  const auto a = range(3, 3, o);
  o.jobs = 4;
  const auto b = range(3, 3, o);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["entries"][0]["search_bound"], "575");
}

TEST(RangeCommand, SampleNeverComplete) {
  RangeOptions o;
  o.sample = 300;
  o.seed = 4;
  o.bound = 40;
  const auto a = range(3, 4, o);
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("source=sample"), std::string::npos);
  EXPECT_NE(a.out.find("lower bound set"), std::string::npos);
  EXPECT_EQ(a.out, range(3, 4, o).out);
}

TEST(RangeCommand, WritesAndUpdatesAtlasFile) {
  TempDir dir;
  const auto file = dir.path() / "atlas.json";
  auto o = complete();
  o.out = file;
  ASSERT_EQ(range(3, 3, o).code, 0);
  ASSERT_EQ(range(2, 4, o).code, 0);
  ASSERT_EQ(range(3, 3, o).code, 0);
  const auto atlas = load_atlas(file);
  ASSERT_EQ(atlas.entries.size(), 2u);
  EXPECT_EQ(atlas.entries[0].result.h, 2u);
  EXPECT_EQ(atlas.entries[1].result.sizes, (std::vector<std::uint64_t>{7, 9, 10}));
}

TEST(Atlas, RoundTripReproducesResults) {
  AtlasFile atlas;
  for (auto [h, k, n] : {std::tuple{3u, std::size_t{3}, std::int64_t{-1}},
                         std::tuple{3u, std::size_t{4}, std::int64_t{40}},
                         std::tuple{2u, std::size_t{5}, std::int64_t{-1}}}) {
    std::ostringstream log;
    atlas.upsert(run_range(h, k, n < 0 ? complete() : bounded(n), log));
  }
  atlas.failures.push_back({4, 9, "boom"});
  const auto text = dump(atlas);
  const auto back = atlas_from_json(nlohmann::json::parse(text));
  ASSERT_EQ(back.entries.size(), atlas.entries.size());
  for (std::size_t i = 0; i < atlas.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].result, atlas.entries[i].result);
  }
  EXPECT_EQ(back.failures.size(), 1u);
  EXPECT_EQ(dump(back), text);
  EXPECT_EQ(back.entries.front().result.h, 2u);  // sorted by (h, k)
}

TEST(Atlas, LoadIsFailClosed) {
  AtlasFile atlas;
  std::ostringstream log;
  atlas.upsert(run_range(3, 3, complete(), log));
  const auto good = to_json(atlas).dump();

  auto tamper = [&](const std::string& from, const std::string& to) {
    auto s = good;
    const auto at = s.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    s.replace(at, from.size(), to);
    return nlohmann::json::parse(s);
  };
  EXPECT_THROW(atlas_from_json(tamper("{0,1,3}", "{0,1,4}")), InconsistencyError);
  EXPECT_THROW(atlas_from_json(tamper("{0,1,3}", "{0,1,")), ParseError);
  EXPECT_THROW(atlas_from_json(tamper("\"schema_version\":1", "\"schema_version\":7")), ParseError);
  EXPECT_THROW(atlas_from_json(tamper("\"ok\":true", "\"ok\":false")), InconsistencyError);
  EXPECT_THROW(atlas_from_json(tamper("\"575\"", "575")), ParseError);
  EXPECT_NO_THROW(atlas_from_json(nlohmann::json::parse(good)));
}

TEST(Atlas, RejectsUnsortedEntries) {
  AtlasFile atlas;
  std::ostringstream log;
  atlas.upsert(run_range(2, 3, complete(), log));
  atlas.upsert(run_range(3, 3, complete(), log));
  std::swap(atlas.entries[0], atlas.entries[1]);
  EXPECT_THROW(atlas_from_json(nlohmann::json::parse(to_json(atlas).dump())), ParseError);
}

TEST(Atlas, CsvAndTextViews) {
  AtlasFile atlas;
  std::ostringstream log;
  atlas.upsert(run_range(3, 3, complete(), log));
  EXPECT_EQ(to_csv(atlas),
            "h,k,source,search_bound,complete,min,max,count,missing,checks\n"
            "3,3,merged,575,true,7,10,3,8,pass\n");
  EXPECT_NE(to_text(atlas).find("575"), std::string::npos);
}

TEST(Atlas, SummaryLine) {
  RangeResult r;
  r.sizes = {7, 9, 10};
  r.complete = true;
  EXPECT_EQ(summary_line(r), "{7, 9, 10}; missing: 8; complete");
  r.sizes = {9, 10, 11, 12, 13, 14, 15};
  EXPECT_EQ(summary_line(r), "[9, 15]; complete");
  r.complete = false;
  EXPECT_EQ(summary_line(r), "[9, 15]; incomplete, verified members (lower bound set)");
  EXPECT_EQ(format_sizes({5}), "{5}");
}

TEST(AtlasCommand, SmallGridAllComplete) {
  AtlasOptions o;
  o.h_lo = 1;
  o.h_hi = 3;
  o.k_lo = 1;
  o.k_hi = 3;
  o.range.complete = true;
  o.range.format = Format::Json;
  const auto r = capture([&](auto& out, auto& err) { return cmd_atlas(o, out, err); });
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["entries"].size(), 9u);
  for (const auto& e : j["entries"]) EXPECT_TRUE(e["complete"].get<bool>());
}

TEST(AtlasCommand, TwoKRowsAreIntervals) {
  AtlasOptions o;
  o.h_lo = o.h_hi = 2;
  o.k_lo = 3;
  o.k_hi = 6;
  o.range.complete = true;
  o.range.format = Format::Csv;
  const auto r = capture([&](auto& out, auto& err) { return cmd_atlas(o, out, err); });
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2,3,merged,7,true,5,6,2,,pass"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2,6,merged,63,true,11,21,11,,pass"), std::string::npos) << r.out;
}

TEST(AtlasCommand, EmptyGridAndPartialFailure) {
  AtlasOptions o;
  o.h_lo = 3;
  o.h_hi = 2;
  o.range.complete = true;
  auto r = capture([&](auto& out, auto& err) { return cmd_atlas(o, out, err); });
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("empty range"), std::string::npos);

  TempDir dir;
  o.h_lo = 3;
  o.h_hi = 3;
  o.k_lo = 3;
  o.k_hi = 4;  // (3,4) is refused under --complete
  o.range.out = dir.path() / "grid.json";
  r = capture([&](auto& out, auto& err) { return cmd_atlas(o, out, err); });
  EXPECT_NE(r.code, 0);
  const auto atlas = load_atlas(dir.path() / "grid.json");
  EXPECT_EQ(atlas.entries.size(), 1u);
  ASSERT_EQ(atlas.failures.size(), 1u);
  EXPECT_EQ(atlas.failures[0].k, 4u);
}

TEST(ParseSpan, Forms) {
  EXPECT_EQ(parse_span("1..3"), (std::pair<std::uint64_t, std::uint64_t>{1, 3}));
  EXPECT_EQ(parse_span("4"), (std::pair<std::uint64_t, std::uint64_t>{4, 4}));
  EXPECT_THROW(parse_span("1..x"), ParseError);
  EXPECT_THROW(parse_span("-1"), ParseError);
}

TEST(Cache, StoresAndReusesResults) {
  TempDir dir;
  auto o = bounded(40);
  o.cache_dir = dir.path();
  const auto first = range(3, 4, o);
  ASSERT_EQ(first.code, 0);
  ResultCache cache(dir.path());
  EXPECT_TRUE(fs::exists(cache.result_path(3, 4, 40)));
  const auto second = range(3, 4, o);
  EXPECT_EQ(second.out, first.out);
  EXPECT_NE(second.err.find("cache: using"), std::string::npos);
}

TEST(Cache, VersionMismatchIsReportedAndRecomputed) {
  TempDir dir;
  auto o = bounded(40);
  o.cache_dir = dir.path();
  ASSERT_EQ(range(3, 4, o).code, 0);
  ResultCache cache(dir.path());
  const auto path = cache.result_path(3, 4, 40);
  auto j = nlohmann::json::parse(read_file(path));
  j["code_version"] = "older";
  write_atomically(path, j.dump());
  const auto again = range(3, 4, o);
  EXPECT_EQ(again.code, 0);
  EXPECT_NE(again.err.find("written by older"), std::string::npos) << again.err;
  EXPECT_NE(again.err.find("recomputing"), std::string::npos);
  // rewritten with the current version
  EXPECT_EQ(nlohmann::json::parse(read_file(path))["code_version"], std::string(kCodeVersion));
}

TEST(Cache, TamperedWitnessIsRejected) {
  TempDir dir;
  ResultCache cache(dir.path());
  SearchConfig cfg;
  cfg.h = 3;
  cfg.k = 3;
  cfg.n = 20;
  auto r = search_range(cfg);
  cache.store_result(r);
  std::ostringstream log;
  EXPECT_EQ(cache.load_result(3, 3, 20, log), r);
  r.witnesses.at(9) = IntegerSet{0, 1, 4};
  // bypass validation by writing the JSON directly
  nlohmann::ordered_json j;
  j["code_version"] = std::string(kCodeVersion);
  j["result"] = to_json(r);
  write_atomically(cache.result_path(3, 3, 20), j.dump());
  EXPECT_FALSE(cache.load_result(3, 3, 20, log).has_value());
  EXPECT_NE(log.str().find("rejecting"), std::string::npos);
}

TEST(Cache, CheckpointRoundTripAndResume) {
  TempDir dir;
  ResultCache cache(dir.path());
  SearchConfig cfg;
  cfg.h = 3;
  cfg.k = 4;
  cfg.n = 30;
  std::map<std::int64_t, ShardResult> shards;
  SearchHooks hooks;
  hooks.on_shard_done = [&](const ShardResult& s) {
    if (s.id < 20) shards[s.id] = s;
  };
  const auto full = search_range(cfg, hooks);
  cache.store_checkpoint(3, 4, 30, shards);
  std::ostringstream log;
  EXPECT_EQ(cache.load_checkpoint(3, 4, 30, log), shards);

  auto o = bounded(30);
  o.cache_dir = dir.path();
  o.resume = true;
  o.format = Format::Json;
  const auto resumed = range(3, 4, o);
  EXPECT_EQ(resumed.code, 0) << resumed.err;
  EXPECT_NE(resumed.err.find("resume: " + std::to_string(shards.size()) + " shards"),
            std::string::npos) << resumed.err;
  const auto j = nlohmann::json::parse(resumed.out);
  EXPECT_EQ(j["entries"][0]["count"], 10);
  EXPECT_FALSE(fs::exists(cache.checkpoint_path(3, 4, 30)));
  (void)full;
}

TEST(Cache, DirectoryFromEnvironment) {
  TempDir dir;
  ::setenv(kCacheDirEnv, dir.path().c_str(), 1);
  EXPECT_EQ(ResultCache::dir_from_env(), dir.path());
  ASSERT_EQ(range(2, 4, complete()).code, 0);
  EXPECT_TRUE(fs::exists(dir.path() / "R_h2_k4_N15.json"));
  ::unsetenv(kCacheDirEnv);
  EXPECT_FALSE(ResultCache::dir_from_env().has_value());
}

TEST(VerifyCommand, AllChecksPass) {
  const auto r = capture([](auto& out, auto& err) { return cmd_verify(out, err); });
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
