#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "catport/errors.hpp"

namespace catport {

// FNV-1a over bytes; the checksum recorded in run manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Shortest decimal form with up to 12 significant digits.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// RFC 4180 field quoting: wrap in quotes when the field contains a comma,
// quote, CR or LF, doubling embedded quotes.
inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Render header + rows as an RFC 4180 document (CRLF line endings, header row
// mandatory).
inline std::string render_csv(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  const auto append_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += "\r\n";
  };
  append_row(header);
  for (const auto& row : rows) append_row(row);
  return out;
}

// Write bytes to `path` atomically: everything goes to a sibling temp file
// which is renamed over the target only after a successful close, so readers
// never observe a partial file and failures leave no output behind.
inline void write_file_atomic(const std::string& path, std::string_view bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp);
    out.write(bytes.data(), std::streamsize(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw Error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename temp file onto: " + path);
  }
}

// Write a CSV document atomically and return the FNV-1a checksum of its bytes.
inline std::uint64_t write_csv(const std::string& path, const std::vector<std::string>& header,
                               const std::vector<std::vector<std::string>>& rows) {
  const std::string doc = render_csv(header, rows);
  write_file_atomic(path, doc);
  return fnv1a64(doc);
}

} // namespace catport
