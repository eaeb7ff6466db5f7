#include <gtest/gtest.h>

#include <cstdlib>
#include <nlohmann/json.hpp>

#include "guioracle/llm/digest.hpp"
#include "guioracle/llm/fixture.hpp"
#include "guioracle/llm/gateway.hpp"
#include "support/builders.hpp"

using namespace guioracle;
using llm::ChatRequest;
using llm::FixtureStore;
using llm::ProviderConfig;
using llm::ProviderFamily;

namespace {

ProviderConfig replay_config(const std::filesystem::path& fixture) {
    ProviderConfig cfg;
    cfg.provider = ProviderFamily::Replay;
    cfg.fixture_path = fixture;
    return cfg;
}

}  // namespace

TEST(Digest, KnownSha256Vectors) {
    EXPECT_EQ(llm::sha256_hex(""),
              "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(llm::sha256_hex("abc"),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Digest, CoversTextAndImageBytes) {
    const std::vector<std::uint8_t> image{1, 2, 3};
    const std::string text = "prompt";
    const auto text_only = llm::request_digest(text, nullptr);
    const auto with_image = llm::request_digest(text, &image);
    EXPECT_NE(text_only, with_image);
    EXPECT_EQ(with_image, llm::request_digest(text, &image));

    const std::vector<std::uint8_t> other{1, 2, 4};
    EXPECT_NE(with_image, llm::request_digest(text, &other));
}

TEST(Digest, Base64KnownValues) {
    const auto enc = [](const std::string& s) {
        return llm::base64_encode(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
    };
    EXPECT_EQ(enc(""), "");
    EXPECT_EQ(enc("f"), "Zg==");
    EXPECT_EQ(enc("fo"), "Zm8=");
    EXPECT_EQ(enc("foo"), "Zm9v");
    EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
}

TEST(Fixture, FileRoundTripUnchanged) {
    testsupport::TempDir tmp("fixture");
    FixtureStore store;
    store.add_by_digest("aa11", "first");
    store.add_by_digest("aa11", "second");
    store.add_by_tag("run|logic|q0", "tagged");
    store.save(tmp.path() / "f.json");

    const FixtureStore loaded = FixtureStore::load(tmp.path() / "f.json");
    EXPECT_EQ(loaded, store);

    loaded.save(tmp.path() / "g.json");
    EXPECT_EQ(FixtureStore::load(tmp.path() / "g.json"), store);
}

TEST(Fixture, ServesResponsesInOrderThenRepeatsLast) {
    FixtureStore store;
    store.add_by_digest("d", "one");
    store.add_by_digest("d", "two");
    EXPECT_EQ(*store.next_response("d", ""), "one");
    EXPECT_EQ(*store.next_response("d", ""), "two");
    EXPECT_EQ(*store.next_response("d", ""), "two");
    EXPECT_EQ(store.next_response("other", ""), nullptr);
}

TEST(Fixture, DigestWinsOverTag) {
    FixtureStore store;
    store.add_by_digest("d", "by-digest");
    store.add_by_tag("t", "by-tag");
    EXPECT_EQ(*store.next_response("d", "t"), "by-digest");
    EXPECT_EQ(*store.next_response("x", "t"), "by-tag");
}

TEST(ReplayClient, ServesFixtureWithLatency) {
    testsupport::TempDir tmp("replay");
    FixtureStore store;
    const auto digest = llm::request_digest("what is on screen?", nullptr);
    store.add_by_digest(digest, "yes there is a bug");
    store.save(tmp.path() / "f.json");

    auto client = llm::make_client(replay_config(tmp.path() / "f.json"));
    const auto result = client->complete({"what is on screen?", std::nullopt, "tag"});
    EXPECT_EQ(result.text, "yes there is a bug");
    EXPECT_GE(result.latency_ms, 0.0);
}

TEST(ReplayClient, MissThrowsFixtureMiss) {
    testsupport::TempDir tmp("replay");
    FixtureStore store;
    store.add_by_digest(llm::request_digest("known", nullptr), "ok");
    store.save(tmp.path() / "f.json");

    auto client = llm::make_client(replay_config(tmp.path() / "f.json"));
    EXPECT_THROW(client->complete({"altered prompt", std::nullopt, "no-such-tag"}),
                 llm::FixtureMiss);
}

TEST(ReplayClient, TextOnlyConfigRejectsImages) {
    testsupport::TempDir tmp("replay");
    FixtureStore().save(tmp.path() / "f.json");
    ProviderConfig cfg = replay_config(tmp.path() / "f.json");
    cfg.supports_images = false;
    auto client = llm::make_client(cfg);
    ChatRequest req{"text", std::vector<std::uint8_t>{1, 2, 3}, ""};
    EXPECT_THROW(client->complete(req), llm::CapabilityError);
}

TEST(RecordFixture, RecordThenReplayReturnsSameResponse) {
    testsupport::TempDir tmp("record");
    // Source of truth to record from: another replay client.
    FixtureStore source;
    source.add_by_digest(llm::request_digest("q1", nullptr), "a1");
    source.save(tmp.path() / "source.json");
    auto live_stand_in = llm::make_client(replay_config(tmp.path() / "source.json"));

    const auto recorded =
        llm::record_fixture(*live_stand_in, {"q1", std::nullopt, ""}, tmp.path() / "rec.json");
    EXPECT_EQ(recorded.text, "a1");

    auto replayed = llm::make_client(replay_config(tmp.path() / "rec.json"));
    EXPECT_EQ(replayed->complete({"q1", std::nullopt, ""}).text, "a1");
    EXPECT_THROW(replayed->complete({"q1 altered", std::nullopt, ""}), llm::FixtureMiss);
}

TEST(LiveClients, MissingCredentialIsAuthError) {
    unsetenv("GUIORACLE_OPENAI_API_KEY");
    ProviderConfig cfg;
    cfg.provider = ProviderFamily::OpenAiCompatible;
    cfg.model_name = "gpt-4o";
    EXPECT_THROW(llm::make_client(cfg), llm::AuthError);
}

TEST(LiveClients, CapabilityCheckBeforeAnyNetwork) {
    setenv("GUIORACLE_OPENAI_API_KEY", "test-key", 1);
    ProviderConfig cfg;
    cfg.provider = ProviderFamily::OpenAiCompatible;
    cfg.model_name = "gpt-3.5-turbo";
    cfg.supports_images = false;
    auto client = llm::make_client(cfg);
    ChatRequest req{"describe", std::vector<std::uint8_t>{9, 9}, ""};
    EXPECT_THROW(client->complete(req), llm::CapabilityError);
    unsetenv("GUIORACLE_OPENAI_API_KEY");
}

TEST(WireFormats, OpenAiPayloadShape) {
    ProviderConfig cfg;
    cfg.model_name = "gpt-4o";
    cfg.temperature = 0.2;
    ChatRequest req{"hello", std::vector<std::uint8_t>{0x89, 0x50}, ""};
    const auto payload = llm::openai_chat_payload(cfg, req);
    EXPECT_EQ(payload.at("model"), "gpt-4o");
    EXPECT_DOUBLE_EQ(payload.at("temperature").get<double>(), 0.2);
    const auto& content = payload.at("messages").at(0).at("content");
    ASSERT_TRUE(content.is_array());
    EXPECT_EQ(content.at(0).at("type"), "text");
    EXPECT_EQ(content.at(0).at("text"), "hello");
    const std::string url = content.at(1).at("image_url").at("url");
    EXPECT_EQ(url.rfind("data:image/png;base64,", 0), 0u);

    // Text-only requests keep the plain string form.
    const auto text_only = llm::openai_chat_payload(cfg, {"hi", std::nullopt, ""});
    EXPECT_TRUE(text_only.at("messages").at(0).at("content").is_string());
}

TEST(WireFormats, GeminiPayloadShape) {
    ProviderConfig cfg;
    cfg.model_name = "gemini-1.5-pro";
    ChatRequest req{"hello", std::vector<std::uint8_t>{1}, ""};
    const auto payload = llm::gemini_chat_payload(cfg, req);
    const auto& parts = payload.at("contents").at(0).at("parts");
    EXPECT_EQ(parts.at(0).at("text"), "hello");
    EXPECT_EQ(parts.at(1).at("inline_data").at("mime_type"), "image/png");
    EXPECT_FALSE(payload.contains("generationConfig"));
}
