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

#ifndef CIBNET_MANIFEST_H_
#define CIBNET_MANIFEST_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cibnet {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::string& path);  // throws IoError

// Provenance record for one command invocation. Everything that determines
// the outputs goes into the digest; wall-clock time deliberately does not,
// so identical inputs give identical manifests. Emitted artifacts are listed
// with their own hashes after the digest is fixed.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void SetConfig(const std::string& key, const std::string& value);
  // Records the file's base name, size and SHA-256.
  void AddInput(const std::string& role, const std::string& path);
  void SetSeed(std::uint64_t seed) { seed_ = seed; }
  void SetCount(const std::string& stage, std::uint64_t n) { counts_[stage] = n; }
  void SetTimeSpan(std::int64_t first, std::int64_t last);

  std::string Digest() const;

  void AddArtifact(const std::string& path);

  const std::string& command() const { return command_; }

  std::string ToJson() const;
  void Write(const std::string& path) const;

 private:
  std::string DigestPayload() const;

  struct Input {
    std::string name;
    std::uint64_t bytes;
    std::string sha256;
  };
  struct Artifact {
    std::string name;
    std::string sha256;
  };

  std::string command_;
  std::map<std::string, std::string> config_;
  std::map<std::string, Input> inputs_;
  std::optional<std::uint64_t> seed_;
  std::map<std::string, std::uint64_t> counts_;
  std::optional<std::pair<std::int64_t, std::int64_t>> span_;
  std::vector<Artifact> artifacts_;
};

}  // namespace cibnet

#endif  // CIBNET_MANIFEST_H_
