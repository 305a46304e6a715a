#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace firstint {

inline constexpr const char* kToolName = "firstint";
inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit fingerprint of the raw input bytes, reported as 16 hex
/// digits. Used to tie reports to the exact input document.
std::string fnv1a64_hex(std::string_view bytes);

/// Fixed 17-significant-digit rendering for every float that reaches a
/// report or CSV. One format everywhere keeps reports byte-reproducible.
std::string format_double(double v);

/// Write-temp-then-rename; a crash mid-scan never leaves a partial file
/// that looks like a result.
void atomic_write_file(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

}  // namespace firstint
