#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "extsum/model.hpp"
#include "extsum/rng.hpp"

namespace testsupport {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "extsum-XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline extsum::ModelDims tiny_dims(std::size_t vocab) {
  extsum::ModelDims dims;
  dims.vocab = vocab;
  dims.embedding = 3;
  dims.word_hidden = 2;
  dims.sent_hidden = 3;
  dims.positional = 2;
  dims.max_positions = 4;
  dims.max_sentence_tokens = 10;
  return dims;
}

inline extsum::ModelParams tiny_model(extsum::Architecture arch, extsum::Depth depth,
                                      std::uint64_t seed = 7, std::size_t vocab = 12) {
  extsum::ModelConfig config;
  config.arch = arch;
  config.depth = depth;
  config.dims = tiny_dims(vocab);
  return extsum::build_model(config, seed);
}

// Random token ids for a small document.
inline std::vector<std::vector<std::size_t>> random_doc_ids(extsum::Rng& rng, std::size_t vocab,
                                                            std::size_t sentences,
                                                            std::size_t tokens) {
  std::vector<std::vector<std::size_t>> ids(sentences);
  for (auto& sentence : ids) {
    sentence.resize(tokens);
    for (auto& id : sentence) id = rng.index(vocab);
  }
  return ids;
}

inline void zero_all(extsum::ParamSet& set) {
  for (auto& p : set) p->value.fill(0.0);
}

// Nudges every value (biases included) off the symmetric init. Gradient
// checks need a generic point: with all biases at zero the deep selector's
// primed summary is exactly the zero vector, which sits on the cosine
// zero-norm singularity.
inline void jitter_params(extsum::ParamSet& set, std::uint64_t seed, double scale = 0.05) {
  extsum::Rng rng(seed);
  for (auto& p : set) {
    for (auto& v : p->value.values()) v += rng.uniform(-scale, scale);
  }
}

}  // namespace testsupport
