#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hope::io {

// Shortest text that is still bit-exact on round trip: printf %.17g.
std::string format_double(double v);

std::string sha256_hex(const std::string& bytes);

struct FileRecord {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

// Artifact directory. Every file written through it is recorded with its
// checksum so the manifest can reference it.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  const std::vector<FileRecord>& files() const { return files_; }

  // Numeric rows; each cell formatted with format_double.
  void write_csv(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);
  void write_text(const std::string& name, const std::string& text);
  // Writes manifest.json with a "files" array appended (not self-referenced).
  void write_manifest(nlohmann::json manifest);

 private:
  std::filesystem::path root_;
  std::vector<FileRecord> files_;
};

}  // namespace hope::io
