#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace tracon::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to reproduce one CLI invocation bit-identically:
/// the subcommand, its parameters, resolved input paths and the paths it
/// wrote. Serialized as sorted key=value lines.
struct RunManifest {
    std::string subcommand;
    std::string version = kToolVersion;
    std::map<std::string, std::string> params;  // param.<name>
    std::map<std::string, std::string> inputs;  // input.<name>  (absolute paths)
    std::map<std::string, std::string> outputs; // output.<name> (absolute paths)

    bool operator==(const RunManifest&) const = default;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

} // namespace tracon::io
