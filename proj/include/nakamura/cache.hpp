#pragma once

#include <openssl/evp.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "errors.hpp"

namespace nakamura {

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        fail(errc::bad_input, "SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

// Content address of one analysis: canonical spec bytes plus everything
// that can change the report for the same spec.
inline std::string cache_key(const std::string& canonical_spec, const std::string& engine_ver,
                             uint64_t seed, int crosscheck_trials, long precision_cap) {
    std::string blob = canonical_spec;
    blob += '\n';
    blob += engine_ver;
    blob += '\n';
    blob += std::to_string(seed);
    blob += '\n';
    blob += std::to_string(crosscheck_trials);
    blob += '\n';
    blob += std::to_string(precision_cap);
    return sha256_hex(blob);
}

inline std::optional<std::string> cache_lookup(const std::string& dir, const std::string& key) {
    std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

// write-temp-rename: concurrent sweep workers never observe partial files
inline void cache_store(const std::string& dir, const std::string& key, const std::string& content) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path final_path = fs::path(dir) / (key + ".json");
    fs::path tmp_path = fs::path(dir) / (key + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::bad_input, "cannot write cache entry " + tmp_path.string());
        out << content;
    }
    fs::rename(tmp_path, final_path);
}

} // namespace nakamura
