#include "guioracle/llm/gateway.hpp"

#include <httplib.h>

#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "guioracle/llm/digest.hpp"
#include "guioracle/llm/fixture.hpp"

namespace guioracle::llm {

using nlohmann::json;

const char* to_string(ProviderFamily family) {
    switch (family) {
        case ProviderFamily::OpenAiCompatible: return "openai";
        case ProviderFamily::GeminiCompatible: return "gemini";
        case ProviderFamily::GlmCompatible: return "glm";
        case ProviderFamily::Replay: return "replay";
    }
    return "?";
}

std::optional<ProviderFamily> provider_family_from_string(const std::string& name) {
    if (name == "openai") return ProviderFamily::OpenAiCompatible;
    if (name == "gemini") return ProviderFamily::GeminiCompatible;
    if (name == "glm") return ProviderFamily::GlmCompatible;
    if (name == "replay") return ProviderFamily::Replay;
    return std::nullopt;
}

const char* credential_env_var(ProviderFamily family) {
    switch (family) {
        case ProviderFamily::OpenAiCompatible: return "GUIORACLE_OPENAI_API_KEY";
        case ProviderFamily::GeminiCompatible: return "GUIORACLE_GEMINI_API_KEY";
        case ProviderFamily::GlmCompatible: return "GUIORACLE_GLM_API_KEY";
        case ProviderFamily::Replay: return "";
    }
    return "";
}

json openai_chat_payload(const ProviderConfig& cfg, const ChatRequest& req) {
    json content;
    if (req.image_png) {
        const std::string b64 = base64_encode(req.image_png->data(), req.image_png->size());
        content = json::array({{{"type", "text"}, {"text", req.text}},
                               {{"type", "image_url"},
                                {"image_url", {{"url", "data:image/png;base64," + b64}}}}});
    } else {
        content = req.text;
    }
    json payload{{"model", cfg.model_name},
                 {"messages", json::array({{{"role", "user"}, {"content", content}}})}};
    if (cfg.temperature) payload["temperature"] = *cfg.temperature;
    return payload;
}

json gemini_chat_payload(const ProviderConfig& cfg, const ChatRequest& req) {
    json parts = json::array({{{"text", req.text}}});
    if (req.image_png) {
        parts.push_back({{"inline_data",
                          {{"mime_type", "image/png"},
                           {"data", base64_encode(req.image_png->data(), req.image_png->size())}}}});
    }
    json payload{{"contents", json::array({{{"parts", parts}}})}};
    if (cfg.temperature) {
        payload["generationConfig"] = {{"temperature", *cfg.temperature}};
    }
    return payload;
}

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

class Semaphore {
public:
    explicit Semaphore(int slots) : slots_(slots) {}
    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return slots_ > 0; });
        --slots_;
    }
    void release() {
        std::lock_guard lock(mutex_);
        ++slots_;
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int slots_;
};

struct SlotGuard {
    Semaphore& sem;
    explicit SlotGuard(Semaphore& s) : sem(s) { sem.acquire(); }
    ~SlotGuard() { sem.release(); }
};

class ReplayClient : public ChatClient {
public:
    explicit ReplayClient(ProviderConfig cfg)
        : cfg_(std::move(cfg)), store_(FixtureStore::load(cfg_.fixture_path)) {}

    ChatResult complete(const ChatRequest& request) override {
        if (request.text.empty()) throw GatewayError("empty request text");
        if (request.image_png && !cfg_.supports_images) {
            throw CapabilityError("provider " + cfg_.model_name + " does not accept images");
        }
        const Stopwatch watch;
        const std::string digest = request_digest(
            request.text, request.image_png ? &*request.image_png : nullptr);
        std::lock_guard lock(mutex_);
        const std::string* response = store_.next_response(digest, request.tag);
        if (!response) {
            throw FixtureMiss("no fixture entry for digest " + digest +
                              (request.tag.empty() ? "" : " or tag " + request.tag));
        }
        return ChatResult{*response, watch.elapsed_ms()};
    }

    const ProviderConfig& config() const override { return cfg_; }

private:
    ProviderConfig cfg_;
    FixtureStore store_;
    std::mutex mutex_;
};

class HttpClientBase : public ChatClient {
public:
    explicit HttpClientBase(ProviderConfig cfg)
        : cfg_(std::move(cfg)), slots_(cfg_.concurrency_cap) {
        const char* env = credential_env_var(cfg_.provider);
        const char* key = env && *env ? std::getenv(env) : nullptr;
        if (!key || !*key) {
            throw AuthError(std::string("missing credential; set ") + env);
        }
        api_key_ = key;
    }

    ChatResult complete(const ChatRequest& request) override {
        if (request.text.empty()) throw GatewayError("empty request text");
        if (request.image_png && !cfg_.supports_images) {
            throw CapabilityError("provider " + cfg_.model_name + " does not accept images");
        }
        SlotGuard guard(slots_);
        const Stopwatch watch;
        std::string last_error;
        for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
            if (attempt > 0) {
                // 500ms, 1s, 2s, ... capped at 8s.
                const auto backoff =
                    std::chrono::milliseconds(500) * (1 << std::min(attempt - 1, 4));
                std::this_thread::sleep_for(backoff);
            }
            try {
                std::string text = issue(request);
                return ChatResult{std::move(text), watch.elapsed_ms()};
            } catch (const TransportError& e) {
                last_error = e.what();
            }
        }
        throw TransportError("request failed after " + std::to_string(cfg_.max_retries + 1) +
                             " attempts: " + last_error);
    }

    const ProviderConfig& config() const override { return cfg_; }

protected:
    virtual std::string issue(const ChatRequest& request) = 0;

    httplib::Result post_json(const std::string& base, const std::string& path,
                              const httplib::Headers& headers, const json& payload) {
        httplib::Client client(base);
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
        client.set_connection_timeout(secs.count(), 0);
        client.set_read_timeout(secs.count(), 0);
        client.set_write_timeout(secs.count(), 0);
        return client.Post(path, headers, payload.dump(), "application/json");
    }

    /// Maps HTTP failures onto the retryable/fatal split: 401/403 are fatal,
    /// transport errors, 429 and 5xx retry.
    void check_http(const httplib::Result& res) {
        if (!res) {
            throw TransportError("transport failure: " + httplib::to_string(res.error()));
        }
        if (res->status == 401 || res->status == 403) {
            throw AuthError("provider rejected credentials (HTTP " +
                            std::to_string(res->status) + ")");
        }
        if (res->status == 429 || res->status >= 500) {
            throw TransportError("HTTP " + std::to_string(res->status));
        }
        if (res->status != 200) {
            throw GatewayError("HTTP " + std::to_string(res->status) + ": " + res->body);
        }
    }

    ProviderConfig cfg_;
    std::string api_key_;

private:
    Semaphore slots_;
};

class OpenAiStyleClient : public HttpClientBase {
public:
    OpenAiStyleClient(ProviderConfig cfg, std::string default_base, std::string path)
        : HttpClientBase(std::move(cfg)),
          base_(cfg_.api_base.empty() ? std::move(default_base) : cfg_.api_base),
          path_(std::move(path)) {}

protected:
    std::string issue(const ChatRequest& request) override {
        const httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
        const auto res = post_json(base_, path_, headers, openai_chat_payload(cfg_, request));
        check_http(res);
        const json body = json::parse(res->body);
        const json& message = body.at("choices").at(0).at("message");
        const json& content = message.at("content");
        if (content.is_string()) return content.get<std::string>();
        std::string text;
        for (const auto& part : content) {
            if (part.contains("text")) text += part.at("text").get<std::string>();
        }
        return text;
    }

private:
    std::string base_;
    std::string path_;
};

class GeminiClient : public HttpClientBase {
public:
    explicit GeminiClient(ProviderConfig cfg)
        : HttpClientBase(std::move(cfg)),
          base_(cfg_.api_base.empty() ? "https://generativelanguage.googleapis.com"
                                      : cfg_.api_base) {}

protected:
    std::string issue(const ChatRequest& request) override {
        const httplib::Headers headers{{"x-goog-api-key", api_key_}};
        const std::string path = "/v1beta/models/" + cfg_.model_name + ":generateContent";
        const auto res = post_json(base_, path, headers, gemini_chat_payload(cfg_, request));
        check_http(res);
        const json body = json::parse(res->body);
        std::string text;
        for (const auto& part : body.at("candidates").at(0).at("content").at("parts")) {
            if (part.contains("text")) text += part.at("text").get<std::string>();
        }
        return text;
    }

private:
    std::string base_;
};

}  // namespace

std::unique_ptr<ChatClient> make_client(const ProviderConfig& config) {
    switch (config.provider) {
        case ProviderFamily::Replay:
            if (config.fixture_path.empty()) {
                throw GatewayError("replay provider requires a fixture path");
            }
            return std::make_unique<ReplayClient>(config);
        case ProviderFamily::OpenAiCompatible:
            return std::make_unique<OpenAiStyleClient>(config, "https://api.openai.com",
                                                       "/v1/chat/completions");
        case ProviderFamily::GlmCompatible:
            return std::make_unique<OpenAiStyleClient>(config, "https://open.bigmodel.cn",
                                                       "/api/paas/v4/chat/completions");
        case ProviderFamily::GeminiCompatible:
            return std::make_unique<GeminiClient>(config);
    }
    throw GatewayError("unknown provider family");
}

ChatResult record_fixture(ChatClient& client, const ChatRequest& request,
                          const std::filesystem::path& fixture_file) {
    ChatResult result = client.complete(request);
    FixtureStore store;
    if (std::filesystem::exists(fixture_file)) {
        store = FixtureStore::load(fixture_file);
    }
    store.add_by_digest(
        request_digest(request.text, request.image_png ? &*request.image_png : nullptr),
        result.text);
    store.save(fixture_file);
    return result;
}

}  // namespace guioracle::llm
