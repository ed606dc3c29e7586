// Copyright 2026 The cibnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "manifest.h"

#include <filesystem>
#include <fstream>
#include <vector>

#include <openssl/evp.h>

#include "corpus.h"
#include "error.h"
#include "json.hpp"

namespace cibnet {
namespace {

using nlohmann::json;

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
      throw Error(ErrorKind::kInternal, "sha256 init failed");
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void Update(const void* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_, data, n) != 1)
      throw Error(ErrorKind::kInternal, "sha256 update failed");
  }

  std::string HexDigest() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_, md, &len) != 1)
      throw Error(ErrorKind::kInternal, "sha256 final failed");
    static const char* kHex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(kHex[md[i] >> 4]);
      out.push_back(kHex[md[i] & 15]);
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string Sha256Hex(std::string_view data) {
  Sha256 h;
  h.Update(data.data(), data.size());
  return h.HexDigest();
}

std::string Sha256File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  Sha256 h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) h.Update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) throw IoError("read failure on " + path);
  return h.HexDigest();
}

RunManifest::RunManifest(std::string command) : command_(std::move(command)) {}

void RunManifest::SetConfig(const std::string& key, const std::string& value) {
  config_[key] = value;
}

void RunManifest::AddInput(const std::string& role, const std::string& path) {
  std::error_code ec;
  auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path);
  inputs_[role] = {std::filesystem::path(path).filename().string(),
                   static_cast<std::uint64_t>(size), Sha256File(path)};
}

void RunManifest::SetTimeSpan(std::int64_t first, std::int64_t last) {
  span_ = {first, last};
}

std::string RunManifest::DigestPayload() const {
  json j;
  j["command"] = command_;
  j["tool_version"] = std::string(kToolVersion);
  j["config"] = config_;
  json inputs = json::object();
  for (const auto& [role, in] : inputs_)
    inputs[role] = {{"name", in.name}, {"bytes", in.bytes}, {"sha256", in.sha256}};
  j["inputs"] = inputs;
  j["seed"] = seed_ ? json(*seed_) : json(nullptr);
  j["row_counts"] = counts_;
  if (span_)
    j["corpus_time_span"] = {{"first", FormatTimestamp(span_->first)},
                             {"last", FormatTimestamp(span_->second)}};
  return j.dump();
}

std::string RunManifest::Digest() const { return Sha256Hex(DigestPayload()); }

void RunManifest::AddArtifact(const std::string& path) {
  artifacts_.push_back(
      {std::filesystem::path(path).filename().string(), Sha256File(path)});
}

std::string RunManifest::ToJson() const {
  json j = json::parse(DigestPayload());
  j["manifest_digest"] = Digest();
  json arts = json::array();
  for (const auto& a : artifacts_) arts.push_back({{"name", a.name}, {"sha256", a.sha256}});
  j["artifacts"] = arts;
  return j.dump(2) + "\n";
}

void RunManifest::Write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << ToJson();
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace cibnet
