#include "biblionet/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "biblionet/errors.hpp"

namespace biblionet {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64_hex(buffer.str());
}

void atomic_write_file(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoFailure("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoFailure("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "biblionet";
    j["command"] = command;
    j["parameters"] = parameters;
    nlohmann::ordered_json ins = nlohmann::ordered_json::array();
    for (const auto& [path, hash] : inputs) ins.push_back({{"path", path}, {"hash", hash}});
    j["inputs"] = std::move(ins);
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

void RunManifest::write_beside(const std::string& output_path) const {
    atomic_write_file(output_path + ".manifest.json", to_json());
}

}  // namespace biblionet
