#include "sumsets/cli/atlas.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "sumsets/errors.hpp"

namespace sumsets::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join(const std::vector<std::uint64_t>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::int64_t parse_i64(const std::string& s, const char* what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

bool entry_less(unsigned h1, std::size_t k1, unsigned h2, std::size_t k2) {
  return h1 != h2 ? h1 < h2 : k1 < k2;
}

}  // namespace

void AtlasFile::upsert(AtlasEntry entry) {
  const auto h = entry.result.h;
  const auto k = entry.result.k;
  auto it = std::lower_bound(entries.begin(), entries.end(), entry,
                             [](const AtlasEntry& a, const AtlasEntry& b) {
                               return entry_less(a.result.h, a.result.k,
                                                 b.result.h, b.result.k);
                             });
  if (it != entries.end() && it->result.h == h && it->result.k == k) {
    *it = std::move(entry);
  } else {
    entries.insert(it, std::move(entry));
  }
  std::erase_if(failures, [&](const AtlasFailure& f) { return f.h == h && f.k == k; });
}

const AtlasEntry* AtlasFile::find(unsigned h, std::size_t k) const {
  for (const auto& e : entries) {
    if (e.result.h == h && e.result.k == k) return &e;
  }
  return nullptr;
}

ordered_json to_json(const RangeResult& r) {
  ordered_json j;
  j["h"] = r.h;
  j["k"] = r.k;
  j["source"] = std::string(to_string(r.source));
  // null marks a closed-form-only result
  j["search_bound"] = r.search_bound ? ordered_json(std::to_string(*r.search_bound))
                                     : ordered_json(nullptr);
  j["complete"] = r.complete;
  auto sizes = ordered_json::array();
  for (auto s : r.sizes) {
    ordered_json row;
    row["size"] = s;
    auto it = r.witnesses.find(s);
    row["witness"] = it == r.witnesses.end() ? ordered_json(nullptr)
                                             : ordered_json(to_string(it->second));
    sizes.push_back(std::move(row));
  }
  j["sizes"] = std::move(sizes);
  return j;
}

ordered_json to_json(const StructureReport& report) {
  ordered_json j;
  j["ok"] = report.ok();
  j["missing"] = report.missing;
  auto checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json row;
    row["name"] = c.name;
    row["status"] = std::string(to_string(c.status));
    row["detail"] = c.detail;
    checks.push_back(std::move(row));
  }
  j["checks"] = std::move(checks);
  return j;
}

ordered_json to_json(const AtlasFile& atlas) {
  ordered_json j;
  j["schema_version"] = atlas.schema_version;
  auto entries = ordered_json::array();
  for (const auto& e : atlas.entries) {
    auto row = to_json(e.result);
    if (!e.result.sizes.empty()) {
      row["min"] = e.result.sizes.front();
      row["max"] = e.result.sizes.back();
    }
    row["count"] = e.result.sizes.size();
    row["report"] = to_json(e.report);
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  auto failures = ordered_json::array();
  for (const auto& f : atlas.failures) {
    ordered_json row;
    row["h"] = f.h;
    row["k"] = f.k;
    row["error"] = f.error;
    failures.push_back(std::move(row));
  }
  j["failures"] = std::move(failures);
  return j;
}

RangeResult range_result_from_json(const json& j) {
  RangeResult r;
  r.h = field<unsigned>(j, "h");
  r.k = field<std::size_t>(j, "k");
  if (r.h == 0 || r.k == 0) throw ParseError("h and k must be positive");
  r.source = parse_range_source(field<std::string>(j, "source"));
  const auto& bound = j.at("search_bound");
  if (!bound.is_null()) {
    if (!bound.is_string()) throw ParseError("search_bound must be a string");
    r.search_bound = parse_i64(bound.get<std::string>(), "search_bound");
  }
  r.complete = field<bool>(j, "complete");
  const auto& sizes = j.at("sizes");
  if (!sizes.is_array()) throw ParseError("sizes must be an array");
  for (const auto& row : sizes) {
    const auto s = field<std::uint64_t>(row, "size");
    r.sizes.push_back(s);
    if (!row.contains("witness")) throw ParseError("missing field 'witness'");
    const auto& w = row.at("witness");
    if (w.is_null()) continue;
    if (!w.is_string()) throw ParseError("witness must be a string");
    r.witnesses.emplace(s, parse_integer_set(w.get<std::string>()));
  }
  validate_result(r);
  return r;
}

AtlasFile atlas_from_json(const json& j) {
  AtlasFile atlas;
  atlas.schema_version = field<int>(j, "schema_version");
  if (atlas.schema_version != kAtlasSchemaVersion) {
    throw ParseError("unsupported schema_version " +
                     std::to_string(atlas.schema_version));
  }
  const auto& entries = j.at("entries");
  if (!entries.is_array()) throw ParseError("entries must be an array");
  for (const auto& row : entries) {
    AtlasEntry e;
    e.result = range_result_from_json(row);
    e.report = verify_structure(e.result);
    if (!row.contains("report") || json(to_json(e.report)) != row.at("report")) {
      throw InconsistencyError("R(" + std::to_string(e.result.h) + "," +
                               std::to_string(e.result.k) +
                               "): stored report differs from recomputed one");
    }
    if (!atlas.entries.empty()) {
      const auto& prev = atlas.entries.back().result;
      if (!entry_less(prev.h, prev.k, e.result.h, e.result.k)) {
        throw ParseError("entries not sorted by (h, k)");
      }
    }
    atlas.entries.push_back(std::move(e));
  }
  if (j.contains("failures")) {
    for (const auto& row : j.at("failures")) {
      atlas.failures.push_back({field<unsigned>(row, "h"),
                                field<std::size_t>(row, "k"),
                                field<std::string>(row, "error")});
    }
  }
  return atlas;
}

std::string dump(const AtlasFile& atlas) { return to_json(atlas).dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AtlasFile load_atlas(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return atlas_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_atomically(const std::filesystem::path& path, std::string_view data) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

void save_atlas(const std::filesystem::path& path, const AtlasFile& atlas) {
  write_atomically(path, dump(atlas));
}

std::string format_sizes(const std::vector<std::uint64_t>& sizes) {
  if (sizes.size() > 1 && sizes.back() - sizes.front() + 1 == sizes.size()) {
    return "[" + std::to_string(sizes.front()) + ", " +
           std::to_string(sizes.back()) + "]";
  }
  return "{" + join(sizes, ", ") + "}";
}

std::string summary_line(const RangeResult& r) {
  std::string out = format_sizes(r.sizes);
  const auto missing = r.missing();
  if (!missing.empty()) out += "; missing: " + join(missing, ", ");
  out += r.complete ? "; complete" : "; incomplete, verified members (lower bound set)";
  return out;
}

std::string to_csv(const AtlasFile& atlas) {
  std::string out = "h,k,source,search_bound,complete,min,max,count,missing,checks\n";
  for (const auto& e : atlas.entries) {
    const auto& r = e.result;
    out += std::to_string(r.h) + "," + std::to_string(r.k) + "," +
           std::string(to_string(r.source)) + "," +
           (r.search_bound ? std::to_string(*r.search_bound) : std::string()) +
           "," + (r.complete ? "true" : "false") + "," +
           std::to_string(r.sizes.front()) + "," +
           std::to_string(r.sizes.back()) + "," +
           std::to_string(r.sizes.size()) + "," + join(e.report.missing, " ") +
           "," + (e.report.ok() ? "pass" : "FAIL") + "\n";
  }
  for (const auto& f : atlas.failures) {
    out += std::to_string(f.h) + "," + std::to_string(f.k) + ",error,,,,,,,FAIL\n";
  }
  return out;
}

std::string to_text(const AtlasFile& atlas) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%3s %3s %10s %8s %8s %6s %-10s %-6s %s\n", "h",
                "k", "N", "min", "max", "count", "complete", "checks", "missing");
  out << line;
  for (const auto& e : atlas.entries) {
    const auto& r = e.result;
    const auto n = r.search_bound ? std::to_string(*r.search_bound) : std::string("-");
    const auto missing = e.report.missing.empty() ? std::string("-")
                                                  : join(e.report.missing, " ");
    std::snprintf(line, sizeof line, "%3u %3zu %10s %8llu %8llu %6zu %-10s %-6s ",
                  r.h, r.k, n.c_str(),
                  static_cast<unsigned long long>(r.sizes.front()),
                  static_cast<unsigned long long>(r.sizes.back()), r.sizes.size(),
                  r.complete ? "yes" : "no", e.report.ok() ? "pass" : "FAIL");
    out << line << missing << "\n";
  }
  for (const auto& f : atlas.failures) {
    out << "R(" << f.h << "," << f.k << ") failed: " << f.error << "\n";
  }
  return out.str();
}

}  // namespace sumsets::cli
