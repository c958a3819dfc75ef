#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "padhyp/cli.hpp"

namespace padhyp::cli {

std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

Json to_json(const RunManifest& m) {
  Json out{{"config", to_json(m.config)}, {"command", m.command}};
  out["inputs"] = m.inputs;
  out["outputs"] = m.outputs;
  out["timings_ms"] = m.timings_ms;
  out["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  return out;
}

void write_artifacts(const std::filesystem::path& dir, const std::map<std::string, std::string>& artifacts,
                     RunManifest& manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot write " + (dir / name).string());
    f << body;
    if (!f.flush()) throw std::ios_base::failure("write failed for " + (dir / name).string());
  };
  for (const auto& [name, body] : artifacts) {
    write(name, body);
    manifest.outputs[name] = sha256_hex(body);
  }
  write("manifest.json", to_json(manifest).dump(2) + "\n");
}

}  // namespace padhyp::cli
