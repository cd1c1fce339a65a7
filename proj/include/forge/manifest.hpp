#ifndef FORGE_MANIFEST_HPP
#define FORGE_MANIFEST_HPP

#include <map>
#include <string>
#include <vector>

namespace forge {

inline constexpr const char* kToolName = "pretrain-forge";
inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the file bytes, hex-encoded. Content fingerprint for
// manifests, not a cryptographic digest.
std::string hash_file(const std::string& path);

// Everything needed to reproduce one artifact file byte-for-byte: the
// command, the full flag set, the seed, and input/output content hashes.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> flags;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs;  // (path, hash)
    std::string output_path;
    std::string output_hash;

    std::string to_json() const;
    // Written next to the artifact as <output>.manifest.json.
    void write_alongside() const;
};

}  // namespace forge

#endif
