#pragma once

#include <string>
#include <string_view>

namespace subtok {

// FIPS 180-4 SHA-256, hex digest. Used for manifest checksums.
std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::string& path);

}  // namespace subtok
