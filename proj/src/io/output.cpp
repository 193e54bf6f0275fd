#include "hope/io/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "hope/errors.hpp"

namespace hope::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw ConfigError("cannot create output directory " + root_.string());
}

void OutputDir::write_text(const std::string& name, const std::string& text) {
  std::ofstream out(root_ / name, std::ios::binary);
  if (!out) throw Error("cannot write " + (root_ / name).string());
  out << text;
  if (!out) throw Error("write failed: " + (root_ / name).string());
  if (name != "manifest.json") files_.push_back({name, sha256_hex(text), text.size()});
}

void OutputDir::write_csv(const std::string& name, const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
  std::ostringstream s;
  for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << header[i];
  s << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << format_double(row[i]);
    s << '\n';
  }
  write_text(name, s.str());
}

void OutputDir::write_manifest(nlohmann::json manifest) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : files_)
    files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  manifest["files"] = files;
  write_text("manifest.json", manifest.dump(2) + "\n");
}

}  // namespace hope::io
