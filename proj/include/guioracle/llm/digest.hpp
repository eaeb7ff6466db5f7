#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace guioracle::llm {

std::string sha256_hex(const std::string& data);

/// Fixture key for a chat request: text and image bytes only, so fixtures
/// stay valid across providers and models.
std::string request_digest(const std::string& text, const std::vector<std::uint8_t>* image_png);

std::string base64_encode(const std::uint8_t* data, std::size_t size);

}  // namespace guioracle::llm
