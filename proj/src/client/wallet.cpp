// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/client/wallet.hpp"

#include "qnet/errors.hpp"
#include "qnet/wire.hpp"

#include <fstream>
#include <sodium.h>
#include <sstream>

namespace qnet::client
{
  namespace
  {
    std::string key_hex(const SymmetricKey& key)
    {
      return to_base64(key);
    }

    SymmetricKey key_from(const std::string& text)
    {
      auto bytes = from_base64(text);
      if (bytes.size() != 32)
        throw std::invalid_argument("circle key must be 32 bytes");
      SymmetricKey key{};
      std::copy(bytes.begin(), bytes.end(), key.begin());
      return key;
    }

    std::pair<unsigned long long, std::size_t> limits(KdfCost cost)
    {
      switch (cost)
      {
        case KdfCost::minimal:
          return {crypto_pwhash_OPSLIMIT_MIN, crypto_pwhash_MEMLIMIT_MIN};
        case KdfCost::interactive:
          return {crypto_pwhash_OPSLIMIT_INTERACTIVE, crypto_pwhash_MEMLIMIT_INTERACTIVE};
        case KdfCost::moderate:
          return {crypto_pwhash_OPSLIMIT_MODERATE, crypto_pwhash_MEMLIMIT_MODERATE};
      }
      throw std::invalid_argument("bad kdf cost");
    }

    std::array<unsigned char, crypto_secretbox_KEYBYTES> derive(
      const std::string& passphrase, const Bytes& salt, unsigned long long ops, std::size_t mem)
    {
      if (salt.size() != crypto_pwhash_SALTBYTES)
        throw AuthenticationError("wallet salt has the wrong size");
      std::array<unsigned char, crypto_secretbox_KEYBYTES> key{};
      if (
        crypto_pwhash(
          key.data(),
          key.size(),
          passphrase.data(),
          passphrase.size(),
          salt.data(),
          ops,
          mem,
          crypto_pwhash_ALG_ARGON2ID13) != 0)
        throw std::runtime_error("out of memory deriving the wallet key");
      return key;
    }
  }

  const KeyPair& Wallet::keypair() const
  {
    if (!keys)
      throw std::logic_error("wallet has no key pair; register first");
    return *keys;
  }

  std::optional<ProxyKey> Wallet::find_key(const std::string& key_id) const
  {
    if (keys && !user_id.empty() && key_id == alias_key_id(user_id))
      return alias_proxy_key(*keys, user_id);
    auto it = proxy_keys.find(key_id);
    if (it == proxy_keys.end())
      return std::nullopt;
    return it->second;
  }

  json Wallet::to_json() const
  {
    json j = {
      {"version", 1},
      {"group_label", group_label},
      {"server_url", server_url},
      {"user_id", user_id},
      {"display_name", display_name},
      {"token", token},
      {"cached_reads", cached_reads},
      {"pending_requests", pending_requests}};
    if (keys)
      j["private_key"] = to_hex(keys->private_key.value());
    json pk = json::object();
    for (const auto& [id, k] : proxy_keys)
      pk[id] = to_hex(k.private_key.value());
    j["proxy_keys"] = pk;
    json ck = json::object();
    for (const auto& [cid, epochs] : circle_keys)
      for (const auto& [epoch, key] : epochs)
        ck[cid][std::to_string(epoch)] = key_hex(key);
    j["circle_keys"] = ck;
    return j;
  }

  Wallet Wallet::from_json(const json& j)
  {
    Wallet w;
    w.group_label = j.at("group_label").get<std::string>();
    const auto& params = w.params();
    w.server_url = j.value("server_url", "");
    w.user_id = j.value("user_id", "");
    w.display_name = j.value("display_name", "");
    w.token = j.value("token", "");
    if (j.contains("private_key"))
      w.keys = keypair_from_private(params, wire::scalar(params, j["private_key"]));
    const auto proxies = j.value("proxy_keys", json::object());
    for (const auto& [id, x] : proxies.items())
      w.proxy_keys.emplace(id, proxy_key_from_private(params, id, wire::scalar(params, x)));
    const auto circles = j.value("circle_keys", json::object());
    for (const auto& [cid, epochs] : circles.items())
      for (const auto& [epoch, key] : epochs.items())
        w.circle_keys[cid][std::stoull(epoch)] = key_from(key.get<std::string>());
    w.cached_reads = j.value("cached_reads", std::map<std::string, json>{});
    w.pending_requests = j.value("pending_requests", std::map<std::string, std::string>{});
    return w;
  }

  void Wallet::save(const std::filesystem::path& path, const std::string& passphrase, KdfCost cost) const
  {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialisation failed");
    const auto [ops, mem] = limits(cost);
    Bytes salt(crypto_pwhash_SALTBYTES);
    randombytes_buf(salt.data(), salt.size());
    Bytes nonce(crypto_secretbox_NONCEBYTES);
    randombytes_buf(nonce.data(), nonce.size());
    auto key = derive(passphrase, salt, ops, mem);

    const auto plain = to_json().dump();
    Bytes sealed(plain.size() + crypto_secretbox_MACBYTES);
    crypto_secretbox_easy(
      sealed.data(), reinterpret_cast<const unsigned char*>(plain.data()), plain.size(), nonce.data(), key.data());
    sodium_memzero(key.data(), key.size());

    const json file = {
      {"format", "qnet-wallet"},
      {"kdf", "argon2id13"},
      {"opslimit", ops},
      {"memlimit", mem},
      {"salt", to_base64(salt)},
      {"nonce", to_base64(nonce)},
      {"ciphertext", to_base64(sealed)}};

    if (path.has_parent_path())
      std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << file.dump(2) << '\n';
      if (!out)
        throw std::runtime_error("cannot write wallet " + tmp.string());
    }
    std::filesystem::permissions(
      tmp, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write,
      std::filesystem::perm_options::replace);
    std::filesystem::rename(tmp, path);
  }

  Wallet Wallet::load(const std::filesystem::path& path, const std::string& passphrase)
  {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialisation failed");
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open wallet " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    json file;
    try
    {
      file = json::parse(buf.str());
    }
    catch (const json::parse_error&)
    {
      throw AuthenticationError("wallet file is not valid JSON");
    }
    if (file.value("format", "") != "qnet-wallet")
      throw AuthenticationError("not a wallet file");

    auto key = derive(
      passphrase,
      from_base64(file.at("salt").get<std::string>()),
      file.at("opslimit").get<unsigned long long>(),
      file.at("memlimit").get<std::size_t>());
    const auto nonce = from_base64(file.at("nonce").get<std::string>());
    const auto sealed = from_base64(file.at("ciphertext").get<std::string>());
    if (nonce.size() != crypto_secretbox_NONCEBYTES || sealed.size() < crypto_secretbox_MACBYTES)
      throw AuthenticationError("wallet file is damaged");
    std::string plain(sealed.size() - crypto_secretbox_MACBYTES, '\0');
    const int rc = crypto_secretbox_open_easy(
      reinterpret_cast<unsigned char*>(plain.data()), sealed.data(), sealed.size(), nonce.data(), key.data());
    sodium_memzero(key.data(), key.size());
    if (rc != 0)
      throw AuthenticationError("wrong passphrase or damaged wallet");
    return from_json(json::parse(plain));
  }
}
