#include "qct/catalog.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qct {

namespace {

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Field order of a payload: "q" directly, or p^e from a field descriptor.
std::optional<std::uint64_t> payload_q(const nlohmann::json& p) {
  if (p.contains("q") && p["q"].is_number_unsigned()) return p["q"].get<std::uint64_t>();
  if (p.contains("field") && p["field"].is_object()) {
    const auto& f = p["field"];
    if (!f.contains("p") || !f.contains("e")) return std::nullopt;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < f["e"].get<unsigned>(); ++i) q *= f["p"].get<std::uint64_t>();
    return q;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> number(const nlohmann::json& p, const char* key) {
  if (p.contains(key) && p[key].is_number_unsigned()) return p[key].get<std::uint64_t>();
  return std::nullopt;
}

}  // namespace

nlohmann::json to_json(const CatalogEntry& e) {
  return {{"id", e.id}, {"kind", e.kind}, {"payload", e.payload}, {"created", e.created}, {"inputs", e.inputs}};
}

CatalogEntry entry_from_json(const nlohmann::json& j) {
  CatalogEntry e;
  e.id = j.at("id").get<std::string>();
  e.kind = j.at("kind").get<std::string>();
  e.payload = j.at("payload");
  e.created = j.value("created", std::string());
  e.inputs = j.value("inputs", std::vector<std::string>{});
  return e;
}

std::string content_id(const nlohmann::json& payload) {
  const std::string bytes = payload.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

bool valid_kind(const std::string& kind) { return kind == "classical" || kind == "quantum" || kind == "report"; }

bool CatalogQuery::matches(const CatalogEntry& e) const {
  if (kind && e.kind != *kind) return false;
  const auto& p = e.payload;
  if (n && number(p, "n") != *n) return false;
  if (k && number(p, "k") != *k) return false;
  if (q && payload_q(p) != *q) return false;
  if (dz_min) {
    auto v = number(p, "dz");
    if (!v || *v < *dz_min) return false;
  }
  if (dx_min) {
    auto v = number(p, "dx");
    if (!v || *v < *dx_min) return false;
  }
  return true;
}

Catalog::Catalog(std::filesystem::path path) : path_(std::move(path)) {}

std::vector<CatalogEntry> Catalog::load() const {
  std::vector<CatalogEntry> out;
  if (!std::filesystem::exists(path_)) return out;
  std::ifstream in(path_);
  if (!in) throw Error("cannot read catalog " + path_.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(entry_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(path_.string() + ":" + std::to_string(lineno) + ": malformed entry: " + e.what());
    }
  }
  return out;
}

CatalogEntry Catalog::put(const std::string& kind, const nlohmann::json& payload, const std::vector<std::string>& inputs) {
  if (!valid_kind(kind)) throw PreconditionError("unknown catalog kind '" + kind + "'");
  std::lock_guard lock(mu_);
  auto entries = load();
  const std::string id = content_id(payload);
  for (const auto& e : entries) {
    if (e.id == id) return e;
  }
  for (const auto& in : inputs) {
    bool found = false;
    for (const auto& e : entries) found = found || e.id == in;
    if (!found) throw NotFound("input " + in + " is not in catalog " + path_.string());
  }
  CatalogEntry e{id, kind, payload, now_utc(), inputs};
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot open catalog " + path_.string() + " for append");
  out << to_json(e).dump() << '\n';
  out.flush();
  if (!out) throw Error("write to catalog " + path_.string() + " failed");
  return e;
}

CatalogEntry Catalog::get(const std::string& id) const {
  std::lock_guard lock(mu_);
  std::vector<CatalogEntry> hits;
  for (auto& e : load()) {
    if (e.id == id) return e;
    if (id.size() >= 6 && e.id.compare(0, id.size(), id) == 0) hits.push_back(std::move(e));
  }
  if (hits.size() == 1) return hits.front();
  if (hits.size() > 1) throw NotFound("id prefix " + id + " is ambiguous in " + path_.string());
  throw NotFound("no entry " + id + " in catalog " + path_.string());
}

std::vector<CatalogEntry> Catalog::list() const {
  std::lock_guard lock(mu_);
  return load();
}

std::vector<CatalogEntry> Catalog::search(const CatalogQuery& q) const {
  std::vector<CatalogEntry> out;
  for (auto& e : list()) {
    if (q.matches(e)) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qct
