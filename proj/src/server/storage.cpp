// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/server/storage.hpp"

#include <mutex>
#include <stdexcept>

namespace qnet::server
{
  std::optional<json> MemoryStorage::get(const std::string& collection, const std::string& key) const
  {
    std::shared_lock guard(lock_);
    auto t = tables_.find(collection);
    if (t == tables_.end())
      return std::nullopt;
    auto it = t->second.find(key);
    if (it == t->second.end())
      return std::nullopt;
    return it->second;
  }

  void MemoryStorage::put(const std::string& collection, const std::string& key, json value)
  {
    std::unique_lock guard(lock_);
    on_put(collection, key, value);
    tables_[collection][key] = std::move(value);
    after_mutation();
  }

  bool MemoryStorage::erase(const std::string& collection, const std::string& key)
  {
    std::unique_lock guard(lock_);
    auto t = tables_.find(collection);
    if (t == tables_.end() || !t->second.contains(key))
      return false;
    on_erase(collection, key);
    t->second.erase(key);
    after_mutation();
    return true;
  }

  std::vector<std::pair<std::string, json>> MemoryStorage::scan(const std::string& collection) const
  {
    std::shared_lock guard(lock_);
    std::vector<std::pair<std::string, json>> out;
    auto t = tables_.find(collection);
    if (t != tables_.end())
      out.assign(t->second.begin(), t->second.end());
    return out;
  }

  std::pair<json, bool> MemoryStorage::insert_or_get(
    const std::string& collection, const std::string& key, const std::function<json()>& make)
  {
    {
      std::shared_lock guard(lock_);
      auto t = tables_.find(collection);
      if (t != tables_.end())
        if (auto it = t->second.find(key); it != t->second.end())
          return {it->second, false};
    }
    std::unique_lock guard(lock_);
    auto& table = tables_[collection];
    if (auto it = table.find(key); it != table.end())
      return {it->second, false};
    json value = make();
    on_put(collection, key, value);
    table.emplace(key, value);
    after_mutation();
    return {std::move(value), true};
  }

  json MemoryStorage::dump() const
  {
    std::shared_lock guard(lock_);
    json out = json::object();
    for (const auto& [name, table] : tables_)
    {
      json& t = out[name] = json::object();
      for (const auto& [key, value] : table)
        t[key] = value;
    }
    return out;
  }

  LogStorage::LogStorage(std::filesystem::path path, std::size_t min_compact_entries) :
    path_(std::move(path)),
    min_compact_entries_(min_compact_entries)
  {
    if (std::filesystem::exists(path_))
    {
      std::ifstream in(path_);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line))
      {
        ++line_no;
        if (line.empty())
          continue;
        json entry;
        try
        {
          entry = json::parse(line);
        }
        catch (const json::parse_error&)
        {
          // A torn final write is dropped; anything earlier is corruption.
          if (in.peek() == std::char_traits<char>::eof())
            break;
          throw std::runtime_error(
            path_.string() + ":" + std::to_string(line_no) + ": corrupt log entry");
        }
        const auto& c = entry.at("c").get_ref<const std::string&>();
        const auto& k = entry.at("k").get_ref<const std::string&>();
        if (entry.at("op") == "put")
          tables_[c][k] = entry.at("v");
        else
          tables_[c].erase(k);
        ++entries_;
      }
    }
    else if (path_.has_parent_path())
      std::filesystem::create_directories(path_.parent_path());
    out_.open(path_, std::ios::app);
    if (!out_)
      throw std::runtime_error("cannot open storage log " + path_.string());
  }

  void LogStorage::append(const json& entry)
  {
    out_ << entry.dump() << '\n';
    out_.flush();
    if (!out_)
      throw std::runtime_error("write to storage log failed");
    ++entries_;
  }

  void LogStorage::on_put(const std::string& collection, const std::string& key, const json& value)
  {
    append({{"op", "put"}, {"c", collection}, {"k", key}, {"v", value}});
  }

  void LogStorage::on_erase(const std::string& collection, const std::string& key)
  {
    append({{"op", "del"}, {"c", collection}, {"k", key}});
  }

  std::size_t LogStorage::live_records() const
  {
    std::size_t n = 0;
    for (const auto& [name, table] : tables_)
      n += table.size();
    return n;
  }

  void LogStorage::after_mutation()
  {
    if (entries_ >= min_compact_entries_ && entries_ > 2 * live_records())
      compact_locked();
  }

  void LogStorage::compact()
  {
    std::unique_lock guard(lock_);
    compact_locked();
  }

  void LogStorage::compact_locked()
  {
    out_.close();
    auto tmp = path_;
    tmp += ".tmp";
    std::size_t written = 0;
    {
      std::ofstream fresh(tmp, std::ios::trunc);
      for (const auto& [name, table] : tables_)
        for (const auto& [key, value] : table)
        {
          fresh << json{{"op", "put"}, {"c", name}, {"k", key}, {"v", value}}.dump() << '\n';
          ++written;
        }
      fresh.flush();
      if (!fresh)
        throw std::runtime_error("storage compaction failed");
    }
    std::filesystem::rename(tmp, path_);
    entries_ = written;
    out_.open(path_, std::ios::app);
  }

  std::size_t LogStorage::log_entries() const
  {
    std::shared_lock guard(lock_);
    return entries_;
  }
}
