#pragma once

#include <optional>
#include <string>

namespace tautring {

// On-disk result cache. Records are content-addressed by the FNV-1a hash of
// the key text; files carry a version header and the full key so collisions
// and stale formats degrade to misses.
class ResultCache {
public:
    // Disabled cache (every get misses, puts are dropped).
    ResultCache() = default;
    explicit ResultCache(std::string dir);

    // Reads the configured environment variable; empty optional when unset.
    static std::optional<std::string> dir_from_env();

    bool enabled() const { return !dir_.empty(); }

    std::optional<std::string> get(const std::string& key) const;

    // Write-once: storing a different value under an existing key throws
    // ("cache integrity violation"); re-storing the identical value is a no-op.
    void put(const std::string& key, const std::string& value) const;

private:
    std::string path_for(const std::string& key) const;

    std::string dir_;
};

uint64_t fnv1a_hash(const std::string& s);

// Name of the cache-directory environment variable.
extern const char* const kCacheEnvVar;

} // namespace tautring
