#include "tracon/manifest.hpp"

#include <fstream>

#include "tracon/error.hpp"

namespace tracon::io {

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << "subcommand=" << manifest.subcommand << '\n';
    out << "version=" << manifest.version << '\n';
    for (const auto& [k, v] : manifest.params) out << "param." << k << '=' << v << '\n';
    for (const auto& [k, v] : manifest.inputs) out << "input." << k << '=' << v << '\n';
    for (const auto& [k, v] : manifest.outputs) out << "output." << k << '=' << v << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    RunManifest m;
    m.version.clear();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "subcommand") {
            m.subcommand = value;
        } else if (key == "version") {
            m.version = value;
        } else if (key.rfind("param.", 0) == 0) {
            m.params[key.substr(6)] = value;
        } else if (key.rfind("input.", 0) == 0) {
            m.inputs[key.substr(6)] = value;
        } else if (key.rfind("output.", 0) == 0) {
            m.outputs[key.substr(7)] = value;
        } else {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": unknown key '" + key + "'");
        }
    }
    if (m.subcommand.empty()) {
        throw ParseError(path.string() + ": manifest has no subcommand");
    }
    return m;
}

} // namespace tracon::io
