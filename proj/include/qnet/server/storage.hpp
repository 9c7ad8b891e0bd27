// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

namespace qnet::server
{
  using json = nlohmann::json;

  /// Keyed JSON records grouped into named collections. Every single-record
  /// write is atomic.
  class Storage
  {
  public:
    virtual ~Storage() = default;

    virtual std::optional<json> get(const std::string& collection, const std::string& key) const = 0;
    virtual void put(const std::string& collection, const std::string& key, json value) = 0;
    virtual bool erase(const std::string& collection, const std::string& key) = 0;
    virtual std::vector<std::pair<std::string, json>> scan(const std::string& collection) const = 0;

    /// Returns the stored record, inserting make() first when the key is
    /// absent. second is true when this call inserted.
    virtual std::pair<json, bool> insert_or_get(
      const std::string& collection, const std::string& key, const std::function<json()>& make) = 0;

    /// Whole state as {collection: {key: record}}.
    virtual json dump() const = 0;
  };

  class MemoryStorage : public Storage
  {
  public:
    std::optional<json> get(const std::string& collection, const std::string& key) const override;
    void put(const std::string& collection, const std::string& key, json value) override;
    bool erase(const std::string& collection, const std::string& key) override;
    std::vector<std::pair<std::string, json>> scan(const std::string& collection) const override;
    std::pair<json, bool> insert_or_get(
      const std::string& collection, const std::string& key, const std::function<json()>& make) override;
    json dump() const override;

  protected:
    using Table = std::map<std::string, std::map<std::string, json>>;

    /// Called with the write lock held after each mutation.
    virtual void on_put(const std::string&, const std::string&, const json&) {}
    virtual void on_erase(const std::string&, const std::string&) {}
    /// Called with the write lock held once the mutation is applied.
    virtual void after_mutation() {}

    mutable std::shared_mutex lock_;
    Table tables_;
  };

  /// MemoryStorage backed by an append-only file of JSON lines. The file is
  /// replayed on open and rewritten once dead entries outnumber live ones.
  class LogStorage : public MemoryStorage
  {
  public:
    explicit LogStorage(std::filesystem::path path, std::size_t min_compact_entries = 1024);

    /// Rewrites the log with one put per live record.
    void compact();

    std::size_t log_entries() const;
    const std::filesystem::path& path() const
    {
      return path_;
    }

  protected:
    void on_put(const std::string& collection, const std::string& key, const json& value) override;
    void on_erase(const std::string& collection, const std::string& key) override;
    void after_mutation() override;

  private:
    void append(const json& entry);
    void compact_locked();
    std::size_t live_records() const;

    std::filesystem::path path_;
    std::size_t min_compact_entries_;
    std::ofstream out_;
    std::size_t entries_ = 0;
  };
}
