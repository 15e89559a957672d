#include "topicforge/workspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "topicforge/error.hpp"
#include "topicforge/serialization.hpp"

namespace topicforge {

namespace fs = std::filesystem;

namespace {

bool slug_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '.' || c == '_' || c == '-';
}

void require_slug(const std::string& name) {
  if (!is_slug(name)) {
    throw Error(ErrorCode::InvalidLabel, "'" + name + "' is not a valid workspace name");
  }
}

Json load_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

std::vector<std::string> json_stems(const fs::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path().stem());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_slug(std::string_view name) noexcept {
  if (name.empty() || name.size() > 128) return false;
  if (name.front() == '.' || name.front() == '-') return false;
  return std::all_of(name.begin(), name.end(), slug_char);
}

std::string slugify(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') {
      out += static_cast<char>(c - 'A' + 'a');
    } else if (slug_char(c) && c != '_') {
      out += c;
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && (out.front() == '.' || out.front() == '-')) out.erase(out.begin());
  while (!out.empty() && out.back() == '-') out.pop_back();
  if (out.size() > 128) out.resize(128);
  return out.empty() ? "corpus" : out;
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + path.parent_path().string());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::Io, "error writing " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot replace " + path.string() + ": " + ec.message());
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) {}

fs::path Workspace::resolve_root(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("TOPICFORGE_WORKSPACE"); env && *env) return env;
  return ".topicforge";
}

fs::path Workspace::corpus_path(const std::string& name) const {
  require_slug(name);
  return root_ / "corpora" / (name + ".json");
}

fs::path Workspace::factorization_path(const std::string& name) const {
  require_slug(name);
  return root_ / "factorizations" / (name + ".json");
}

void Workspace::save_corpus(const std::string& name, const Corpus& corpus) const {
  write_file_atomic(corpus_path(name), dump(to_json(corpus)) + "\n");
}

Corpus Workspace::load_corpus(const std::string& name) const {
  const auto path = corpus_path(name);
  if (!fs::exists(path)) throw Error(ErrorCode::NotFound, "no corpus named '" + name + "'");
  return corpus_from_json(load_json(path));
}

bool Workspace::has_corpus(const std::string& name) const {
  return is_slug(name) && fs::exists(corpus_path(name));
}

std::vector<std::string> Workspace::corpus_names() const {
  return json_stems(root_ / "corpora");
}

void Workspace::save_factorization(const std::string& name, const std::string& corpus,
                                   const Factorization& f) const {
  if (!has_corpus(corpus)) throw Error(ErrorCode::NotFound, "no corpus named '" + corpus + "'");
  Json j;
  j["corpus"] = corpus;
  j.update(to_json(f));
  write_file_atomic(factorization_path(name), dump(j) + "\n");
}

StoredFactorization Workspace::load_factorization(const std::string& name) const {
  const auto path = factorization_path(name);
  if (!fs::exists(path)) {
    throw Error(ErrorCode::NotFound, "no factorization named '" + name + "'");
  }
  const Json j = load_json(path);
  try {
    return {j.at("corpus").get<std::string>(), factorization_from_json(j)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

bool Workspace::has_factorization(const std::string& name) const {
  return is_slug(name) && fs::exists(factorization_path(name));
}

std::vector<std::string> Workspace::factorization_names() const {
  return json_stems(root_ / "factorizations");
}

}  // namespace topicforge
