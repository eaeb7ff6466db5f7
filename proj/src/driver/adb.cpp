#include "guioracle/driver/adb.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>

#include "guioracle/driver/backend.hpp"

namespace guioracle::driver {

namespace {

std::string shell_quote(const std::string& arg) {
    std::string out = "'";
    for (const char c : arg) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    out += '\'';
    return out;
}

}  // namespace

AdbClient::AdbClient(std::string serial) : serial_(std::move(serial)) {
    const char* override_path = std::getenv("GUIORACLE_ADB_PATH");
    adb_path_ = override_path && *override_path ? override_path : "adb";
}

AdbClient::Output AdbClient::run(const std::vector<std::string>& args) const {
    std::string command = shell_quote(adb_path_);
    if (!serial_.empty()) {
        command += " -s " + shell_quote(serial_);
    }
    for (const std::string& arg : args) {
        command += ' ';
        command += shell_quote(arg);
    }
    command += " 2>/dev/null";

    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        throw DeviceUnreachable("cannot start debug bridge: " + adb_path_);
    }
    Output output;
    std::array<std::uint8_t, 4096> buf;
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        output.bytes.insert(output.bytes.end(), buf.begin(), buf.begin() + n);
    }
    const int status = pclose(pipe);
    output.exit_code = status >= 0 ? WEXITSTATUS(status) : -1;
    return output;
}

std::string AdbClient::shell(const std::string& command) const {
    Output out = run({"shell", command});
    if (out.exit_code != 0) {
        throw DeviceUnreachable("shell command failed (exit " +
                                std::to_string(out.exit_code) + "): " + command);
    }
    return out.text();
}

std::vector<std::uint8_t> AdbClient::exec_out(const std::string& command) const {
    Output out = run({"exec-out", command});
    if (out.exit_code != 0) {
        throw DeviceUnreachable("exec-out command failed (exit " +
                                std::to_string(out.exit_code) + "): " + command);
    }
    return std::move(out.bytes);
}

}  // namespace guioracle::driver
