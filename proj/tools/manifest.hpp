#pragma once

// Run manifests: what was run, with which seed, and SHA-256 digests of every
// output stream, so two runs can be compared without diffing the outputs.

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <memory>
#include <ostream>
#include <streambuf>
#include <string>
#include <vector>

namespace homwalk::cli {

/// Forwards bytes to another buffer while hashing them.
class DigestBuf : public std::streambuf {
 public:
  explicit DigestBuf(std::streambuf* target);
  ~DigestBuf() override;
  DigestBuf(const DigestBuf&) = delete;
  DigestBuf& operator=(const DigestBuf&) = delete;

  /// Hex SHA-256 of everything written so far; may be called once.
  std::string finish();
  std::uint64_t bytes() const noexcept { return bytes_; }

 protected:
  int_type overflow(int_type ch) override;
  std::streamsize xsputn(const char* s, std::streamsize n) override;
  int sync() override;

 private:
  std::streambuf* target_;
  EVP_MD_CTX* ctx_;
  std::uint64_t bytes_ = 0;
};

struct OutputDigest {
  std::string name;
  std::uint64_t bytes = 0;
  std::string sha256;
};

class RunManifest {
 public:
  RunManifest(int argc, char** argv);
  void set_seed(std::uint64_t seed) { seed_ = seed; has_seed_ = true; }
  void add_output(OutputDigest d) { outputs_.push_back(std::move(d)); }
  /// One JSON object on one line.
  std::string to_json(int exit_code) const;

 private:
  std::vector<std::string> command_;
  std::uint64_t seed_ = 0;
  bool has_seed_ = false;
  std::string started_;
  std::chrono::steady_clock::time_point t0_;
  std::vector<OutputDigest> outputs_;
};

}  // namespace homwalk::cli
