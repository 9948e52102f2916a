// Copyright 2026 The FaaS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP front end for the fairness board.
//
//   GET  /v1/board?from=&to=  JSON array of stored entries (raw bytes)
//   GET  /v1/board/head       last entry, 404 when empty
//   GET  /v1/board/{seq}      one entry exactly as stored, 404 past the head
//   GET  /v1/board/verify     {"valid","entries","problems"}
//   POST /v1/board            {"kind","payload"}, "Authorization: Bearer <credential>"
//
// Errors are returned as {"error": kind, "message": text}.

#ifndef FAAS_BOARD_HTTP_HPP_
#define FAAS_BOARD_HTTP_HPP_

#include <httplib.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faas/board.hpp"
#include "faas/codec.hpp"
#include "faas/errors.hpp"

namespace faas {

inline constexpr const char* kJsonContentType = "application/json";

inline std::string ErrorBody(const std::string& kind, const std::string& message) {
  Document doc;
  doc["error"] = kind;
  doc["message"] = message;
  return Canonical(doc);
}

inline int HttpStatusFor(const Error& e) {
  if (e.kind() == "bad-credential") return 401;
  if (e.kind() == "not-found") return 404;
  if (e.kind() == "gate-rejected") return 422;
  if (e.category() == ErrorCategory::kIo) return 500;
  if (e.category() == ErrorCategory::kVerification) return 422;
  return 400;
}

class BoardServer {
 public:
  explicit BoardServer(Board& board, unsigned workers = 1) : board_(board), workers_(workers) {
    server_.Get("/v1/board", [this](const httplib::Request& req, httplib::Response& res) {
      Handle(res, [&] {
        const std::uint64_t from = QueryU64(req, "from", 0);
        const std::uint64_t to = QueryU64(req, "to", UINT64_MAX);
        std::string body = "[";
        bool first = true;
        for (const auto& line : board_.ListRaw(from, to)) {
          if (!first) body += ',';
          body += line;
          first = false;
        }
        body += ']';
        res.set_content(body, kJsonContentType);
      });
    });
    server_.Get("/v1/board/head", [this](const httplib::Request&, httplib::Response& res) {
      Handle(res, [&] {
        const std::size_t size = board_.size();
        if (size == 0) throw InputError("not-found", "board is empty");
        res.set_content(board_.GetRaw(size - 1), kJsonContentType);
      });
    });
    server_.Get("/v1/board/verify", [this](const httplib::Request&, httplib::Response& res) {
      Handle(res, [&] {
        res.set_content(Canonical(ChainReportDocument(board_.VerifyChain(workers_))),
                        kJsonContentType);
      });
    });
    server_.Get(R"(/v1/board/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      Handle(res, [&] {
        std::uint64_t seq = 0;
        try {
          seq = std::stoull(req.matches[1].str());
        } catch (const std::exception&) {
          throw InputError("not-found", "sequence number out of range");
        }
        res.set_content(board_.GetRaw(seq), kJsonContentType);
      });
    });
    server_.Post("/v1/board", [this](const httplib::Request& req, httplib::Response& res) {
      Handle(res, [&] {
        const std::string auth = req.get_header_value("Authorization");
        const std::string prefix = "Bearer ";
        if (auth.rfind(prefix, 0) != 0) throw InputError("bad-credential", "missing bearer credential");
        const Document body = ParseDocument(req.body);
        if (!body.is_object()) throw InputError("malformed-request", "body must be an object");
        const EntryKind kind = ParseEntryKind(GetString(body, "kind"));
        const BoardEntry entry =
            board_.Append(kind, Field(body, "payload"), auth.substr(prefix.size()), workers_);
        Document out;
        out["seq"] = entry.seq;
        out["timestamp"] = entry.timestamp;
        out["kind"] = EntryKindName(entry.kind);
        out["payload_digest"] = entry.payload_digest;
        out["prev_hash"] = entry.prev_hash;
        out["entry_hash"] = entry.entry_hash;
        res.status = 201;
        res.set_content(Canonical(out), kJsonContentType);
      });
    });
  }

  BoardServer(const BoardServer&) = delete;
  BoardServer& operator=(const BoardServer&) = delete;

  int BindToAnyPort(const std::string& host = "127.0.0.1") {
    return server_.bind_to_any_port(host);
  }
  bool Bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  // Blocks until Stop().
  bool ListenAfterBind() { return server_.listen_after_bind(); }
  void Stop() { server_.stop(); }
  void WaitUntilReady() { server_.wait_until_ready(); }

 private:
  template <class Fn>
  static void Handle(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      res.status = HttpStatusFor(e);
      res.set_content(ErrorBody(e.kind(), e.message()), kJsonContentType);
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(ErrorBody("internal", e.what()), kJsonContentType);
    }
  }

  static std::uint64_t QueryU64(const httplib::Request& req, const std::string& key,
                                std::uint64_t fallback) {
    if (!req.has_param(key)) return fallback;
    try {
      return std::stoull(req.get_param_value(key));
    } catch (const std::exception&) {
      throw InputError("bad-argument", "query parameter '" + key + "' must be an integer");
    }
  }

  Board& board_;
  unsigned workers_;
  httplib::Server server_;
};

class BoardClient {
 public:
  // `url` is "http://host:port".
  explicit BoardClient(const std::string& url) : client_(url) {
    if (!client_.is_valid()) throw InputError("bad-argument", "invalid board url '" + url + "'");
    client_.set_connection_timeout(10);
    client_.set_read_timeout(600);
    client_.set_write_timeout(600);
  }

  std::optional<std::string> GetRaw(std::uint64_t seq) {
    auto res = client_.Get("/v1/board/" + std::to_string(seq));
    if (!res) throw Transport("GET /v1/board/" + std::to_string(seq), res.error());
    if (res->status == 404) return std::nullopt;
    if (res->status != 200) throw Remote(*res);
    return res->body;
  }

  // Every stored entry, fetched one at a time until the first 404.
  std::vector<std::string> FetchAll() {
    std::vector<std::string> lines;
    for (std::uint64_t seq = 0;; ++seq) {
      auto raw = GetRaw(seq);
      if (!raw) return lines;
      lines.push_back(std::move(*raw));
    }
  }

  std::optional<BoardEntry> Head() {
    auto res = client_.Get("/v1/board/head");
    if (!res) throw Transport("GET /v1/board/head", res.error());
    if (res->status == 404) return std::nullopt;
    if (res->status != 200) throw Remote(*res);
    return ParseEntry(res->body);
  }

  Document ServerVerify() {
    auto res = client_.Get("/v1/board/verify");
    if (!res) throw Transport("GET /v1/board/verify", res.error());
    if (res->status != 200) throw Remote(*res);
    return ParseDocument(res->body);
  }

  // Returns the sealed entry header.
  Document Append(EntryKind kind, const Document& payload, const std::string& credential) {
    Document body;
    body["kind"] = EntryKindName(kind);
    body["payload"] = payload;
    httplib::Headers headers = {{"Authorization", "Bearer " + credential}};
    auto res = client_.Post("/v1/board", headers, Canonical(body), kJsonContentType);
    if (!res) throw Transport("POST /v1/board", res.error());
    if (res->status != 201) throw Remote(*res);
    return ParseDocument(res->body);
  }

 private:
  static Error Transport(const std::string& what, httplib::Error err) {
    return IoError("board-unreachable", what + ": " + httplib::to_string(err));
  }

  // Maps the server's error body back onto the local error taxonomy.
  static Error Remote(const httplib::Response& res) {
    std::string kind = "board-error", message = "HTTP " + std::to_string(res.status);
    try {
      const Document doc = ParseDocument(res.body);
      kind = GetString(doc, "error");
      message = GetString(doc, "message");
    } catch (const Error&) {
    }
    if (res.status == 422) return VerificationError(kind, message);
    if (res.status >= 500) return IoError(kind, message);
    return InputError(kind, message);
  }

  httplib::Client client_;
};

}  // namespace faas

#endif  // FAAS_BOARD_HTTP_HPP_
