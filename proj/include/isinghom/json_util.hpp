#pragma once

#include <cstdint>
#include <string>

namespace isinghom {

/// Decimal form of x with 17 significant digits; parses back to the same
/// binary64 value.
std::string fmt_double(double x);

/// FNV-1a 64-bit digest of a byte string, as 16 lowercase hex characters.
std::string fnv1a_hex(const std::string& bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace isinghom
