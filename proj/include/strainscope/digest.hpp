#pragma once

#include <string>
#include <string_view>

namespace strainscope {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);
/// Throws std::runtime_error when the file cannot be read.
std::string sha256_file(const std::string& path);

}  // namespace strainscope
