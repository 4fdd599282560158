#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace cryptonet {

// FNV-1a 64-bit; manifest hashes are for rerun-identity checks, not security.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_file(const std::filesystem::path& path);

}  // namespace cryptonet
