#include "tautring/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace fs = std::filesystem;

namespace tautring {

const char* const kCacheEnvVar = "TAUTRING_CACHE";
static const char* const kMagic = "tautring-cache 1";

uint64_t fnv1a_hash(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
}

std::optional<std::string> ResultCache::dir_from_env() {
    const char* v = std::getenv(kCacheEnvVar);
    if (v && *v) return std::string(v);
    return std::nullopt;
}

std::string ResultCache::path_for(const std::string& key) const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(key)));
    return dir_ + "/" + buf + ".txt";
}

namespace {

// Returns the stored value if the file is well-formed and matches the key.
std::optional<std::string> read_record(const std::string& path, const std::string& key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string magic, stored_key, value;
    if (!std::getline(in, magic) || magic != kMagic) {
        std::cerr << "warning: ignoring cache record with unknown format: " << path << "\n";
        return std::nullopt;
    }
    if (!std::getline(in, stored_key)) {
        std::cerr << "warning: ignoring corrupt cache record: " << path << "\n";
        return std::nullopt;
    }
    if (stored_key != key) return std::nullopt; // hash collision: plain miss
    std::ostringstream rest;
    rest << in.rdbuf();
    value = rest.str();
    if (!value.empty() && value.back() == '\n') value.pop_back();
    return value;
}

} // namespace

std::optional<std::string> ResultCache::get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    return read_record(path_for(key), key);
}

void ResultCache::put(const std::string& key, const std::string& value) const {
    if (!enabled()) return;
    std::string path = path_for(key);
    if (auto existing = read_record(path, key)) {
        if (*existing != value)
            throw std::runtime_error("cache integrity violation: key already stored with a "
                                     "different value: " + path);
        return;
    }
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file: " + tmp);
        out << kMagic << "\n" << key << "\n" << value << "\n";
    }
    fs::rename(tmp, path);
}

} // namespace tautring
