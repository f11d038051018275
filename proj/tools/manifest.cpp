#include "manifest.hpp"

#include <openssl/opensslv.h>

#include <boost/version.hpp>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include "json.hpp"

namespace homwalk::cli {

DigestBuf::DigestBuf(std::streambuf* target) : target_(target), ctx_(EVP_MD_CTX_new()) {
  if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("cannot initialise SHA-256");
}

DigestBuf::~DigestBuf() { EVP_MD_CTX_free(ctx_); }

DigestBuf::int_type DigestBuf::overflow(int_type ch) {
  if (traits_type::eq_int_type(ch, traits_type::eof())) return traits_type::not_eof(ch);
  const char c = traits_type::to_char_type(ch);
  return xsputn(&c, 1) == 1 ? ch : traits_type::eof();
}

std::streamsize DigestBuf::xsputn(const char* s, std::streamsize n) {
  EVP_DigestUpdate(ctx_, s, static_cast<std::size_t>(n));
  bytes_ += static_cast<std::uint64_t>(n);
  return target_->sputn(s, n);
}

int DigestBuf::sync() { return target_->pubsync(); }

std::string DigestBuf::finish() {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx_, md, &len);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

RunManifest::RunManifest(int argc, char** argv) : t0_(std::chrono::steady_clock::now()) {
  for (int i = 0; i < argc; ++i) command_.emplace_back(argv[i]);
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  started_ = buf;
}

std::string RunManifest::to_json(int exit_code) const {
  nlohmann::json j;
  j["manifest"] = "homwalk";
  j["command"] = command_;
  j["seed"] = has_seed_ ? nlohmann::json(seed_) : nlohmann::json(nullptr);
  j["versions"] = {{"homwalk", HOMWALK_VERSION},
                   {"boost", BOOST_LIB_VERSION},
                   {"compiler", __VERSION__},
                   {"openssl", OPENSSL_VERSION_TEXT}};
  j["started"] = started_;
  j["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  j["exit_code"] = exit_code;
  j["outputs"] = nlohmann::json::array();
  for (const auto& o : outputs_) j["outputs"].push_back({{"name", o.name}, {"bytes", o.bytes}, {"sha256", o.sha256}});
  return j.dump();
}

}  // namespace homwalk::cli
