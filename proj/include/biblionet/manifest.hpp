#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace biblionet {

/// FNV-1a 64-bit hash used for input provenance fingerprints.
std::uint64_t fnv1a64(std::string_view bytes);

std::string fnv1a64_hex(std::string_view bytes);

/// Hash of a file's contents; throws IoFailure when unreadable.
std::string hash_file(const std::string& path);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partial file.
void atomic_write_file(const std::string& path, std::string_view content);

/// Reproducibility sidecar written next to every CLI output: the command,
/// all parameters, and content hashes of every input. Deliberately carries
/// no timestamps so reruns are byte-identical.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::vector<std::pair<std::string, std::string>> inputs;  // (path, content hash)
    std::vector<std::string> outputs;

    std::string to_json() const;

    /// <output>.manifest.json next to the named output.
    void write_beside(const std::string& output_path) const;
};

}  // namespace biblionet
