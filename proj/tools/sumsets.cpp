#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sumsets/cli/cache.hpp"
#include "sumsets/cli/commands.hpp"

namespace cli = sumsets::cli;

namespace {

// Flags shared by `range` and `atlas`.
struct RangeFlags {
  std::optional<std::int64_t> bound;
  bool complete = false;
  unsigned jobs = 1;
  std::string cache_dir;
  std::string out;
  std::string format = "text";
  std::uint64_t max_sets = 2'000'000'000;
  bool progress = false;

  void add_to(CLI::App* app) {
    app->add_option("--bound,-N", bound, "search subsets of [0,N]");
    app->add_flag("--complete", complete, "search up to the completeness bound");
    app->add_option("--jobs,-j", jobs, "worker threads (0 = all cores)")->capture_default_str();
    app->add_option("--cache-dir", cache_dir,
                    std::string("result cache directory (default $") + cli::kCacheDirEnv + ")");
    app->add_option("--out,-o", out, "atlas file (JSON) to write");
    app->add_option("--format", format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app->add_option("--max-sets", max_sets,
                    "refuse --complete runs estimated to visit more canonical sets")
        ->capture_default_str();
    app->add_flag("--progress", progress, "report search progress on stderr");
  }

  cli::RangeOptions options() const {
    cli::RangeOptions o;
    o.bound = bound;
    o.complete = complete;
    o.jobs = jobs;
    if (!cache_dir.empty()) o.cache_dir = cache_dir;
    if (!out.empty()) o.out = out;
    o.format = cli::parse_format(format);
    o.max_sets = max_sets;
    o.progress = progress;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"h-fold sumsets, constructions and sumset-size ranges R(h,k)"};
  app.set_config("--config", "", "read options from a TOML/INI file; flags win");
  app.require_subcommand(1);

  std::string literal;
  unsigned sumset_h = 0;
  cli::SumsetOptions sumset_opts;
  auto* sumset = app.add_subcommand("sumset", "print hA for a set literal like {0,1,3}");
  sumset->add_option("set", literal, "the set, e.g. {0,1,3}")->required();
  sumset->add_option("H", sumset_h, "number of summands h")->required();
  sumset->add_flag("--oracle", sumset_opts.oracle, "cross-check against the slow definition");
  sumset->add_flag("--intervals", sumset_opts.intervals, "list the intervals one per line");

  std::string family;
  std::vector<std::string> params;
  auto* construct = app.add_subcommand("construct", "build a family member and verify its size");
  construct->add_option("family", family, "progression or two-interval")->required();
  construct->add_option("params", params, "progression: a= l= b= h=; two-interval: a= b= c= h=")
      ->required();

  unsigned range_h = 1;
  std::size_t range_k = 1;
  RangeFlags range_flags;
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  bool resume = false;
  auto* range = app.add_subcommand("range", "compute R(h,k) with witnesses");
  range->add_option("H", range_h, "h")->required()->check(CLI::PositiveNumber);
  range->add_option("K", range_k, "k")->required()->check(CLI::PositiveNumber);
  range_flags.add_to(range);
  range->add_option("--sample", sample, "size of COUNT random k-subsets of [0,N] instead");
  range->add_option("--seed", seed, "seed for --sample")->capture_default_str();
  range->add_flag("--resume", resume, "continue from the checkpoint in the cache directory");

  std::string h_span = "1..3", k_span = "1..3";
  RangeFlags atlas_flags;
  auto* atlas = app.add_subcommand("atlas", "R(h,k) over a grid");
  atlas->add_option("--h-range", h_span, "h values, e.g. 1..3")->capture_default_str();
  atlas->add_option("--k-range", k_span, "k values, e.g. 3..6")->capture_default_str();
  atlas_flags.add_to(atlas);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");

  CLI11_PARSE(app, argc, argv);

  if (*sumset) return cli::cmd_sumset(literal, sumset_h, sumset_opts, std::cout, std::cerr);
  if (*construct) return cli::cmd_construct(family, params, std::cout, std::cerr);
  try {
    if (*range) {
      auto o = range_flags.options();
      o.sample = sample;
      o.seed = seed;
      o.resume = resume;
      return cli::cmd_range(range_h, range_k, o, std::cout, std::cerr);
    }
    if (*atlas) {
      cli::AtlasOptions o;
      const auto [hl, hh] = cli::parse_span(h_span);
      const auto [kl, kh] = cli::parse_span(k_span);
      o.h_lo = static_cast<unsigned>(hl);
      o.h_hi = static_cast<unsigned>(hh);
      o.k_lo = kl;
      o.k_hi = kh;
      o.range = atlas_flags.options();
      return cli::cmd_atlas(o, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitError;
  }
  if (*verify) return cli::cmd_verify(std::cout, std::cerr);
  return cli::kExitError;
}
