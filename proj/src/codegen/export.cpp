// Copyright 2026 The irforge Authors.
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

#include "irforge/codegen/export.hpp"

#include <algorithm>
#include <fstream>

#include <openssl/evp.h>
#include <zlib.h>

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"

namespace irforge::codegen {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Keeps file names inside their directory.
std::string file_stem(std::string_view name) {
  std::string out;
  for (char c : name) out.push_back(c == '/' || c == '\\' || c == ':' ? '_' : c);
  while (!out.empty() && out.front() == '.') out.erase(out.begin());
  return out.empty() ? "Unnamed" : out;
}

void put16(std::string& out, unsigned v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put32(std::string& out, unsigned long v) {
  put16(out, static_cast<unsigned>(v & 0xffff));
  put16(out, static_cast<unsigned>((v >> 16) & 0xffff));
}

void write_file(const fs::path& path, const std::string& contents) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  out.close();
  if (ec || !out) throw Error("io_error", "cannot write " + path.string(), {{"path", path.string()}});
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string make_zip(const std::vector<std::pair<std::string, std::string>>& entries) {
  // 1980-01-01 00:00:00 in DOS format.
  constexpr unsigned kTime = 0;
  constexpr unsigned kDate = (0 << 9) | (1 << 5) | 1;
  std::string body;
  std::string central;
  for (const auto& [name, data] : entries) {
    const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
    const auto offset = body.size();
    put32(body, 0x04034b50);
    put16(body, 20);
    put16(body, 0x0800);  // UTF-8 names
    put16(body, 0);       // stored
    put16(body, kTime);
    put16(body, kDate);
    put32(body, crc);
    put32(body, data.size());
    put32(body, data.size());
    put16(body, static_cast<unsigned>(name.size()));
    put16(body, 0);
    body += name;
    body += data;

    put32(central, 0x02014b50);
    put16(central, 20);
    put16(central, 20);
    put16(central, 0x0800);
    put16(central, 0);
    put16(central, kTime);
    put16(central, kDate);
    put32(central, crc);
    put32(central, data.size());
    put32(central, data.size());
    put16(central, static_cast<unsigned>(name.size()));
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put32(central, 0);
    put32(central, offset);
    central += name;
  }
  std::string out = body + central;
  put32(out, 0x06054b50);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<unsigned>(entries.size()));
  put16(out, static_cast<unsigned>(entries.size()));
  put32(out, central.size());
  put32(out, body.size());
  put16(out, 0);
  return out;
}

json to_json(const Manifest& manifest) {
  json files = json::array();
  for (const auto& f : manifest.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return {{"app", manifest.app}, {"files", files}};
}

std::vector<std::pair<std::string, std::string>> export_files(const GeneratedProject& gp) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& v : gp.views) out.emplace_back("Sources/Views/" + file_stem(v.view_name) + ".swift", v.view_code);
  for (const auto& m : gp.models) out.emplace_back("Sources/Models/" + file_stem(m.name) + ".swift", m.code);
  for (const auto& u : gp.utilities) out.emplace_back("Sources/Utilities/" + file_stem(u.name) + ".swift", u.code);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first == b.first; }), out.end());
  return out;
}

Manifest build_manifest(const GeneratedProject& gp) {
  Manifest m;
  m.app = gp.app_name;
  for (const auto& [path, data] : export_files(gp)) m.files.push_back({path, sha256_hex(data), data.size()});
  return m;
}

Manifest export_project(const GeneratedProject& gp, const fs::path& out_dir) {
  const auto app_dir = out_dir / file_stem(gp.app_name);
  std::error_code ec;
  fs::remove_all(app_dir / "Sources", ec);
  if (ec) throw Error("io_error", "cannot clear " + (app_dir / "Sources").string(), {{"path", (app_dir / "Sources").string()}});
  for (const auto& [path, data] : export_files(gp)) write_file(app_dir / path, data);
  const auto manifest = build_manifest(gp);
  write_file(app_dir / kManifestName, ir::canonical_text(to_json(manifest)));
  return manifest;
}

std::string export_archive(const GeneratedProject& gp) {
  const auto prefix = file_stem(gp.app_name) + "/";
  std::vector<std::pair<std::string, std::string>> entries;
  for (auto& [path, data] : export_files(gp)) entries.emplace_back(prefix + path, std::move(data));
  entries.emplace_back(prefix + kManifestName, ir::canonical_text(to_json(build_manifest(gp))));
  std::sort(entries.begin(), entries.end());
  return make_zip(entries);
}

}  // namespace irforge::codegen
