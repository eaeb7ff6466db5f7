#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace guioracle::driver {

/// Thin wrapper over the Android debug bridge binary. The binary path comes
/// from GUIORACLE_ADB_PATH, falling back to "adb" on PATH.
class AdbClient {
public:
    explicit AdbClient(std::string serial);

    struct Output {
        int exit_code = -1;
        std::vector<std::uint8_t> bytes;
        std::string text() const { return {bytes.begin(), bytes.end()}; }
    };

    /// Runs `adb -s <serial> <args...>` capturing stdout (binary-safe).
    Output run(const std::vector<std::string>& args) const;

    std::string shell(const std::string& command) const;
    std::vector<std::uint8_t> exec_out(const std::string& command) const;

    const std::string& serial() const { return serial_; }

private:
    std::string adb_path_;
    std::string serial_;
};

}  // namespace guioracle::driver
