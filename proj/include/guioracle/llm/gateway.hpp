#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace guioracle::llm {

class GatewayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
/// Image sent to a provider that cannot take one.
class CapabilityError : public GatewayError {
public:
    using GatewayError::GatewayError;
};
/// Missing or rejected credentials.
class AuthError : public GatewayError {
public:
    using GatewayError::GatewayError;
};
/// Network-level failure that survived the retry budget.
class TransportError : public GatewayError {
public:
    using GatewayError::GatewayError;
};
/// Replay provider has no entry for the request.
class FixtureMiss : public GatewayError {
public:
    using GatewayError::GatewayError;
};

enum class ProviderFamily { OpenAiCompatible, GeminiCompatible, GlmCompatible, Replay };

const char* to_string(ProviderFamily family);
std::optional<ProviderFamily> provider_family_from_string(const std::string& name);

struct ProviderConfig {
    ProviderFamily provider = ProviderFamily::Replay;
    std::string model_name = "replay";
    std::string api_base;  // empty selects the family default
    std::chrono::milliseconds timeout{30000};
    int max_retries = 3;
    std::optional<double> temperature;  // provider default when unset
    bool supports_images = true;
    std::filesystem::path fixture_path;  // Replay only
    int concurrency_cap = 4;
};

/// Environment variable holding the family's API key.
const char* credential_env_var(ProviderFamily family);

struct ChatRequest {
    std::string text;
    std::optional<std::vector<std::uint8_t>> image_png;
    std::string tag;  // opaque correlation string, also a replay fallback key
};

struct ChatResult {
    std::string text;
    double latency_ms = 0.0;
};

class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual ChatResult complete(const ChatRequest& request) = 0;
    virtual const ProviderConfig& config() const = 0;
};

std::unique_ptr<ChatClient> make_client(const ProviderConfig& config);

/// Issues the request against a live client and appends the response to the
/// fixture file (created on first use), keyed by request digest.
ChatResult record_fixture(ChatClient& client, const ChatRequest& request,
                          const std::filesystem::path& fixture_file);

// Request payload builders, exposed for tests of the wire formats.
nlohmann::json openai_chat_payload(const ProviderConfig& cfg, const ChatRequest& req);
nlohmann::json gemini_chat_payload(const ProviderConfig& cfg, const ChatRequest& req);

}  // namespace guioracle::llm
