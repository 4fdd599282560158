#include "cryptonet/hash.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet {

std::string hash_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}' for hashing", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return fmt::format("fnv1a64:{:016x}", fnv1a64(buf.str()));
}

}  // namespace cryptonet
