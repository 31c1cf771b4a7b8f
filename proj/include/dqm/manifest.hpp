#ifndef DQM_MANIFEST_HPP
#define DQM_MANIFEST_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace dqm {

inline constexpr const char* kToolVersion = "0.1.0";

/// SHA-256 of a file's bytes, lowercase hex. Throws InputError if unreadable.
std::string sha256_file(const std::string& path);

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const void* data, std::size_t size);

/// Reproducibility record written next to each command's output: the exact
/// command line, input digests, seed, tool version and timestamps. Replaying
/// the command with the same tool version reproduces the measures exactly.
struct RunManifest {
    std::vector<std::string> command;
    nlohmann::ordered_json config;
    std::vector<std::string> input_paths;
    std::uint64_t seed = 0;
    std::string output_path;

    nlohmann::ordered_json to_json() const;  // hashes inputs, stamps time
    void write(const std::string& path) const;
};

}  // namespace dqm

#endif  // DQM_MANIFEST_HPP
