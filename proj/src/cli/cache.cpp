#include "sumsets/cli/cache.hpp"

#include <cstdlib>

#include "sumsets/cli/atlas.hpp"
#include "sumsets/errors.hpp"

namespace sumsets::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string stem(unsigned h, std::size_t k, std::int64_t n) {
  return "R_h" + std::to_string(h) + "_k" + std::to_string(k) + "_N" +
         std::to_string(n);
}

// Parses the file and checks its code version; nullopt (with a note in
// `log`) when it cannot be used.
std::optional<json> open_versioned(const std::filesystem::path& path,
                                   std::ostream& log) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const std::exception& e) {
    log << "cache: ignoring unreadable " << path.string() << ": " << e.what() << "\n";
    return std::nullopt;
  }
  const auto version = j.is_object() && j.contains("code_version") &&
                               j["code_version"].is_string()
                           ? j["code_version"].get<std::string>()
                           : std::string("<none>");
  if (version != kCodeVersion) {
    log << "cache: " << path.string() << " was written by " << version
        << ", this is " << kCodeVersion << "; recomputing\n";
    return std::nullopt;
  }
  return j;
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::optional<std::filesystem::path> ResultCache::dir_from_env() {
  const char* v = std::getenv(kCacheDirEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

std::filesystem::path ResultCache::result_path(unsigned h, std::size_t k,
                                               std::int64_t n) const {
  return dir_ / (stem(h, k, n) + ".json");
}

std::filesystem::path ResultCache::checkpoint_path(unsigned h, std::size_t k,
                                                   std::int64_t n) const {
  return dir_ / (stem(h, k, n) + ".checkpoint.json");
}

std::optional<RangeResult> ResultCache::load_result(unsigned h, std::size_t k,
                                                    std::int64_t n,
                                                    std::ostream& log) const {
  const auto path = result_path(h, k, n);
  auto j = open_versioned(path, log);
  if (!j) return std::nullopt;
  try {
    auto r = range_result_from_json(j->at("result"));
    if (r.h != h || r.k != k || r.search_bound != n) {
      throw InconsistencyError("key does not match contents");
    }
    return r;
  } catch (const std::exception& e) {
    log << "cache: rejecting " << path.string() << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

void ResultCache::store_result(const RangeResult& searched) const {
  if (!searched.search_bound) throw InvalidArgument("only search results are cached");
  ordered_json j;
  j["code_version"] = std::string(kCodeVersion);
  j["result"] = to_json(searched);
  write_atomically(result_path(searched.h, searched.k, *searched.search_bound),
                   j.dump(2) + "\n");
}

std::map<std::int64_t, ShardResult> ResultCache::load_checkpoint(
    unsigned h, std::size_t k, std::int64_t n, std::ostream& log) const {
  const auto path = checkpoint_path(h, k, n);
  auto j = open_versioned(path, log);
  if (!j) return {};
  std::map<std::int64_t, ShardResult> out;
  try {
    if (j->at("h").get<unsigned>() != h || j->at("k").get<std::size_t>() != k ||
        j->at("n").get<std::string>() != std::to_string(n)) {
      throw InconsistencyError("key does not match contents");
    }
    for (const auto& row : j->at("shards")) {
      ShardResult s;
      s.id = std::stoll(row.at("id").get<std::string>());
      s.sets_examined = std::stoull(row.at("sets_examined").get<std::string>());
      for (const auto& w : row.at("witnesses")) {
        const auto size = w.at("size").get<std::uint64_t>();
        auto set = parse_integer_set(w.at("witness").get<std::string>());
        if (set.size() != k || set.max() != s.id || sumset_size(set, h) != size) {
          throw InconsistencyError("witness " + to_string(set) + " fails re-validation");
        }
        s.witnesses.emplace(size, std::move(set));
      }
      out.emplace(s.id, std::move(s));
    }
  } catch (const std::exception& e) {
    log << "cache: rejecting checkpoint " << path.string() << ": " << e.what() << "\n";
    return {};
  }
  return out;
}

void ResultCache::store_checkpoint(
    unsigned h, std::size_t k, std::int64_t n,
    const std::map<std::int64_t, ShardResult>& shards) const {
  ordered_json j;
  j["code_version"] = std::string(kCodeVersion);
  j["h"] = h;
  j["k"] = k;
  j["n"] = std::to_string(n);
  auto rows = ordered_json::array();
  for (const auto& [id, s] : shards) {
    if (s.truncated) continue;
    ordered_json row;
    row["id"] = std::to_string(id);
    row["sets_examined"] = std::to_string(s.sets_examined);
    auto ws = ordered_json::array();
    for (const auto& [size, w] : s.witnesses) {
      ws.push_back({{"size", size}, {"witness", to_string(w)}});
    }
    row["witnesses"] = std::move(ws);
    rows.push_back(std::move(row));
  }
  j["shards"] = std::move(rows);
  write_atomically(checkpoint_path(h, k, n), j.dump() + "\n");
}

void ResultCache::remove_checkpoint(unsigned h, std::size_t k, std::int64_t n) const {
  std::error_code ec;
  std::filesystem::remove(checkpoint_path(h, k, n), ec);
}

}  // namespace sumsets::cli
