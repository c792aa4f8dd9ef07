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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <zlib.h>

namespace irforge::testing {

struct ZipEntry {
  std::string name;
  std::string data;
  std::uint32_t crc = 0;
  std::uint16_t method = 0;
  std::uint16_t flags = 0;
};

// Minimal reader for stored (uncompressed) archives. Walks the local headers,
// checks each CRC with zlib and cross-checks the central directory count.
inline std::vector<ZipEntry> read_zip(const std::string& bytes) {
  auto u16 = [&](std::size_t at) {
    if (at + 2 > bytes.size()) throw std::runtime_error("truncated zip");
    return static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[at]) | (static_cast<unsigned char>(bytes[at + 1]) << 8));
  };
  auto u32 = [&](std::size_t at) { return static_cast<std::uint32_t>(u16(at)) | (static_cast<std::uint32_t>(u16(at + 2)) << 16); };

  std::vector<ZipEntry> out;
  std::size_t pos = 0;
  while (pos + 4 <= bytes.size() && u32(pos) == 0x04034b50u) {
    ZipEntry e;
    e.flags = u16(pos + 6);
    e.method = u16(pos + 8);
    e.crc = u32(pos + 14);
    const auto csize = u32(pos + 18);
    const auto usize = u32(pos + 22);
    const auto nlen = u16(pos + 26);
    const auto xlen = u16(pos + 28);
    if (e.method != 0 || csize != usize) throw std::runtime_error("unexpected compression");
    e.name = bytes.substr(pos + 30, nlen);
    const auto data_at = pos + 30 + nlen + xlen;
    if (data_at + csize > bytes.size()) throw std::runtime_error("truncated entry " + e.name);
    e.data = bytes.substr(data_at, csize);
    const auto actual = crc32(0L, reinterpret_cast<const Bytef*>(e.data.data()), static_cast<uInt>(e.data.size()));
    if (actual != e.crc) throw std::runtime_error("crc mismatch in " + e.name);
    out.push_back(std::move(e));
    pos = data_at + csize;
  }
  const auto eocd = bytes.rfind(std::string("PK\x05\x06", 4));
  if (eocd == std::string::npos) throw std::runtime_error("no end of central directory");
  if (u16(eocd + 10) != out.size()) throw std::runtime_error("central directory count mismatch");
  return out;
}

}  // namespace irforge::testing
