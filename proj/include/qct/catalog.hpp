#pragma once

// Append-only JSON-lines store of code records, quantum records and audit
// reports, keyed by the SHA-256 of the serialized payload.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/error.hpp"

namespace qct {

struct CatalogEntry {
  std::string id;
  std::string kind;  // classical | quantum | report
  nlohmann::json payload;
  std::string created;  // UTC, ISO 8601
  std::vector<std::string> inputs;
};

nlohmann::json to_json(const CatalogEntry& e);
CatalogEntry entry_from_json(const nlohmann::json& j);

// Lowercase hex SHA-256 of payload.dump().
std::string content_id(const nlohmann::json& payload);

bool valid_kind(const std::string& kind);

struct CatalogQuery {
  std::optional<std::string> kind;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> q;
  std::optional<unsigned> dz_min;
  std::optional<unsigned> dx_min;

  bool matches(const CatalogEntry& e) const;
};

class Catalog {
 public:
  explicit Catalog(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  // Returns the stored entry; a payload already present is not appended
  // again. Every input id must already be in the catalog.
  CatalogEntry put(const std::string& kind, const nlohmann::json& payload, const std::vector<std::string>& inputs = {});
  // Full id or a unique prefix of at least 6 characters.
  CatalogEntry get(const std::string& id) const;
  std::vector<CatalogEntry> list() const;
  std::vector<CatalogEntry> search(const CatalogQuery& q) const;

 private:
  std::vector<CatalogEntry> load() const;

  std::filesystem::path path_;
  mutable std::mutex mu_;
};

}  // namespace qct
