// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.

// qnet: user-side command line.

#include "qnet/client/gateway.hpp"
#include "qnet/errors.hpp"
#include "qnet/wire.hpp"

#include "CLI11.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace qnet;
using namespace qnet::client;

namespace
{
  std::string env_or(const char* name, std::string fallback)
  {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
  }

  std::string default_wallet()
  {
    return env_or("QNET_WALLET", env_or("HOME", ".") + "/.qnet/wallet.json");
  }

  Bytes read_file(const std::string& path)
  {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw std::runtime_error("cannot read " + path);
    return Bytes(std::istreambuf_iterator<char>(in), {});
  }

  std::atomic<bool> stop_requested{false};
  Gateway* running_gateway = nullptr;

  void on_signal(int)
  {
    stop_requested = true;
    if (running_gateway)
      running_gateway->stop();
  }

  struct Settings
  {
    std::string server = env_or("QNET_SERVER", "http://127.0.0.1:8080");
    std::string wallet = default_wallet();
    std::string group = env_or("QNET_GROUP", std::string(standard_label));
    std::string passphrase_file;
    bool as_json = false;

    std::string passphrase() const
    {
      if (!passphrase_file.empty())
      {
        auto bytes = read_file(passphrase_file);
        std::string p(bytes.begin(), bytes.end());
        while (!p.empty() && (p.back() == '\n' || p.back() == '\r'))
          p.pop_back();
        return p;
      }
      if (const char* p = std::getenv("QNET_PASSPHRASE"))
        return p;
      throw std::runtime_error("set QNET_PASSPHRASE or --passphrase-file to unlock the wallet");
    }
  };

  /// Loaded wallet plus the objects built around it.
  struct Session
  {
    Settings settings;
    Wallet wallet;
    std::unique_ptr<ServerApi> api;
    SystemRng rng;
    std::unique_ptr<Client> client;

    Session(const Settings& s, bool allow_new) : settings(s)
    {
      if (std::filesystem::exists(s.wallet))
        wallet = Wallet::load(s.wallet, s.passphrase());
      else if (allow_new)
      {
        wallet.group_label = s.group;
        wallet.server_url = s.server;
      }
      else
        throw std::runtime_error("no wallet at " + s.wallet + "; run qnet register first");
      params_for_label(wallet.group_label);
      api = std::make_unique<ServerApi>(s.server);
      client = std::make_unique<Client>(wallet, *api, rng);
    }

    void save()
    {
      wallet.save(settings.wallet, settings.passphrase());
    }
  };

  void print(const Settings& s, const json& j, const std::string& text)
  {
    if (s.as_json)
      std::cout << j.dump() << '\n';
    else
      std::cout << text << '\n';
  }

  Approval ask(const json& request)
  {
    std::cout << "request " << request.at("request_id").get<std::string>() << " from "
              << request.at("requester_id").get<std::string>() << " for content "
              << request.at("content_id").get<std::string>() << "; approve? [y/N/s] " << std::flush;
    std::string answer;
    if (!std::getline(std::cin, answer))
      return Approval::skip;
    if (answer == "y" || answer == "Y" || answer == "yes")
      return Approval::approve;
    if (answer == "s")
      return Approval::skip;
    return Approval::deny;
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"quorumnet client"};
  app.require_subcommand(1);
  Settings settings;
  app.add_option("--server", settings.server, "Server URL (env QNET_SERVER)");
  app.add_option("--wallet", settings.wallet, "Wallet file (env QNET_WALLET)");
  app.add_option("--group", settings.group, "Group label for new wallets (env QNET_GROUP)");
  app.add_option("--passphrase-file", settings.passphrase_file, "File holding the wallet passphrase");
  app.add_flag("--json", settings.as_json, "Machine-readable output");

  auto* reg = app.add_subcommand("register", "Create a key pair and register it");
  std::string name;
  reg->add_option("--name", name, "Display name")->required();

  app.add_subcommand("whoami", "Show the wallet identity");
  app.add_subcommand("sync", "Fetch and unwrap proxy keys held for this user");

  auto* post = app.add_subcommand("post", "Publish content");
  std::string visibility = "private", text, file, to, reuse, alias;
  std::size_t fresh_keys = 1;
  std::optional<std::size_t> per_holder;
  post->add_option("--visibility", visibility, "public or private")->check(CLI::IsMember({"public", "private"}));
  auto* text_opt = post->add_option("--text", text, "Payload text");
  post->add_option("--file", file, "Payload file")->excludes(text_opt);
  post->add_option("--to", to, "Comma-separated user ids that hold the fresh proxy keys");
  post->add_option("--keys", fresh_keys, "Fresh proxy keys to generate");
  post->add_option("--keys-per-holder", per_holder, "Spread the fresh keys with the quorum rule");
  post->add_option("--reuse-key", reuse, "Comma-separated existing proxy key ids");
  post->add_option("--alias", alias, "Comma-separated user ids whose own keys join the proxy set");

  auto* read = app.add_subcommand("read", "Decrypt content");
  std::string content_id, out_file;
  double timeout = 30;
  read->add_option("content_id", content_id)->required();
  read->add_option("--timeout", timeout, "Seconds to wait for shares");
  read->add_option("--out", out_file, "Write the plaintext to a file");

  auto* revoke = app.add_subcommand("revoke", "Delete a viewer's blinding record");
  std::string viewer;
  revoke->add_option("content_id", content_id)->required();
  revoke->add_option("--viewer", viewer, "Viewer user id")->required();

  app.add_subcommand("inbox", "List share requests awaiting this user");

  auto* circle = app.add_subcommand("circle", "Circles");
  circle->require_subcommand(1);
  std::string circle_id;
  auto* c_create = circle->add_subcommand("create", "Create a circle");
  c_create->add_option("circle_id,--id", circle_id, "Circle id; the server picks one when omitted");
  auto* c_join = circle->add_subcommand("join", "Join a circle");
  c_join->add_option("circle_id", circle_id)->required();
  auto* c_post = circle->add_subcommand("post", "Post to a circle");
  c_post->add_option("circle_id", circle_id)->required();
  c_post->add_option("--text", text, "Payload text")->required();
  auto* c_rotate = circle->add_subcommand("rotate", "Start a new key epoch");
  CircleRotationOptions rotation;
  c_rotate->add_option("circle_id", circle_id)->required();
  c_rotate->add_option("--keys", rotation.keys, "Proxy keys for the epoch");
  c_rotate->add_option("--keys-per-member", rotation.keys_per_member, "Keys per member");
  auto* c_read = circle->add_subcommand("read", "Decrypt circle posts");
  c_read->add_option("circle_id", circle_id)->required();
  c_read->add_option("--timeout", timeout, "Seconds to wait for shares");

  auto* proxy = app.add_subcommand("proxy", "Proxy duties");
  proxy->require_subcommand(1);
  auto* serve = proxy->add_subcommand("serve", "Answer share requests");
  bool auto_approve = false, once = false;
  int interval_ms = 1000;
  serve->add_flag("--auto-approve", auto_approve, "Approve every request without asking");
  serve->add_flag("--once", once, "Handle the current inbox and exit");
  serve->add_option("--interval", interval_ms, "Polling interval in milliseconds");

  auto* gateway = app.add_subcommand("gateway", "Local API for the web UI");
  std::string gw_listen = "127.0.0.1:8090", static_dir;
  gateway->add_option("--listen", gw_listen, "host:port");
  gateway->add_option("--static", static_dir, "Directory served at /");

  CLI11_PARSE(app, argc, argv);

  try
  {
    Session session(settings, reg->parsed());
    auto& c = *session.client;
    auto& w = session.wallet;

    if (reg->parsed())
    {
      auto res = c.register_user(name);
      session.save();
      print(settings, res, "registered " + w.user_id);
    }
    else if (app.got_subcommand("whoami"))
    {
      json held = json::array();
      for (const auto& [id, k] : w.proxy_keys)
        held.push_back(id);
      json j = {{"user_id", w.user_id}, {"display_name", w.display_name}, {"group_label", w.group_label}, {"held_key_ids", held}};
      print(settings, j, w.user_id + " (" + w.display_name + "), " + std::to_string(held.size()) + " proxy keys");
    }
    else if (app.got_subcommand("sync"))
    {
      const auto added = c.sync_keys();
      session.save();
      print(settings, {{"added", added}}, std::to_string(added) + " new proxy keys");
    }
    else if (post->parsed())
    {
      Bytes payload = file.empty() ? Bytes(text.begin(), text.end()) : read_file(file);
      Audience audience;
      audience.holders = split_list(to);
      audience.fresh_keys = fresh_keys;
      audience.keys_per_holder = per_holder;
      audience.reuse_key_ids = split_list(reuse);
      audience.alias_users = split_list(alias);
      auto item = c.post(visibility_from_string(visibility), payload, audience);
      session.save();
      print(
        settings,
        {{"content_id", item.content_id}, {"proxy_key_ids", item.proxy_key_ids}},
        item.content_id);
    }
    else if (read->parsed())
    {
      ReadOptions opts;
      opts.timeout = std::chrono::milliseconds(static_cast<long>(timeout * 1000));
      int rc = 0;
      try
      {
        c.sync_keys();
        auto result = c.read(content_id, opts);
        if (!out_file.empty())
        {
          std::ofstream out(out_file, std::ios::binary);
          out.write(reinterpret_cast<const char*>(result.plaintext.data()), result.plaintext.size());
        }
        std::string textual(result.plaintext.begin(), result.plaintext.end());
        print(settings, {{"content_id", content_id}, {"payload", to_base64(result.plaintext)}}, out_file.empty() ? textual : out_file);
      }
      catch (const MissingSharesError& e)
      {
        std::cerr << "qnet: " << e.what() << '\n';
        rc = 3;
      }
      session.save();
      return rc;
    }
    else if (revoke->parsed())
    {
      const bool revoked = c.revoke(content_id, viewer);
      print(settings, {{"revoked", revoked}}, revoked ? "revoked" : "no blinding record to revoke");
    }
    else if (app.got_subcommand("inbox"))
    {
      c.sync_keys();
      auto inbox = c.inbox();
      session.save();
      std::ostringstream lines;
      for (const auto& r : inbox)
        lines << r.at("request_id").get<std::string>() << " " << r.at("requester_id").get<std::string>() << " "
              << r.at("content_id").get<std::string>() << '\n';
      print(settings, inbox, lines.str() + std::to_string(inbox.size()) + " pending");
    }
    else if (circle->parsed())
    {
      json res;
      std::string summary;
      if (c_create->parsed())
      {
        res = c.circle_create(circle_id.empty() ? std::nullopt : std::optional(circle_id));
        summary = res.at("circle_id").get<std::string>();
      }
      else if (c_join->parsed())
      {
        res = c.circle_join(circle_id);
        summary = "joined " + circle_id;
      }
      else if (c_rotate->parsed())
      {
        res = c.circle_rotate(circle_id, rotation);
        summary = circle_id + " epoch " + std::to_string(res.at("key_epoch").get<std::uint64_t>());
      }
      else if (c_post->parsed())
      {
        auto item = c.circle_post(circle_id, Bytes(text.begin(), text.end()));
        res = {{"content_id", item.content_id}, {"epoch", item.epoch}};
        summary = item.content_id;
      }
      else if (c_read->parsed())
      {
        ReadOptions opts;
        opts.timeout = std::chrono::milliseconds(static_cast<long>(timeout * 1000));
        res = c.circle_read(circle_id, opts);
        std::ostringstream lines;
        for (const auto& p : res)
        {
          if (lines.tellp() > 0)
            lines << '\n';
          lines << p.at("owner_id").get<std::string>() << " [" << p.at("epoch") << "] "
                << (p.contains("text") ? p["text"].get<std::string>() : "<" + p.value("error", "") + ">");
        }
        summary = lines.str();
      }
      session.save();
      print(settings, res, summary);
    }
    else if (serve->parsed())
    {
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      const Approver approver = auto_approve ? Approver([](const json&) { return Approval::approve; }) : Approver(ask);
      do
      {
        const auto handled = c.serve_once(approver);
        session.save();
        if (handled > 0 && !settings.as_json)
          std::cout << "answered " << handled << " requests" << std::endl;
        if (once)
          break;
        std::this_thread::sleep_for(std::chrono::milliseconds(interval_ms));
      } while (!stop_requested);
    }
    else if (gateway->parsed())
    {
      const auto colon = gw_listen.rfind(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--listen must be host:port");
      GatewayOptions opts;
      if (!static_dir.empty())
        opts.static_dir = static_dir;
      Gateway gw(c, [&session] { session.save(); }, opts);
      const int port = gw.bind(gw_listen.substr(0, colon), std::stoi(gw_listen.substr(colon + 1)));
      if (port < 0)
        throw std::runtime_error("cannot bind " + gw_listen);
      running_gateway = &gw;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "gateway on " << gw_listen.substr(0, colon) << ":" << port << std::endl;
      gw.listen();
      running_gateway = nullptr;
    }
  }
  catch (const ApiClientError& e)
  {
    std::cerr << "qnet: server error " << e.status() << " " << e.code() << ": " << e.what() << '\n';
    return 2;
  }
  catch (const std::exception& e)
  {
    std::cerr << "qnet: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
