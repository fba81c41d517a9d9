// Drives the seanet binary for CLI-level tests. SEANET_CLI_BIN comes from
// the build system.
#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace subprocess {

struct Result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::filesystem::path make_temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() /
               ("seanet-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

/// Runs `seanet <args>`, capturing stdout and stderr.
inline Result run_cli(const std::string& args, const std::filesystem::path& workdir) {
    Result result;
    auto out_file = workdir / "stdout.capture";
    auto err_file = workdir / "stderr.capture";
    std::string cmd = std::string(SEANET_CLI_BIN) + " " + args + " >" + out_file.string() +
                      " 2>" + err_file.string();
    int status = std::system(cmd.c_str());
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

} // namespace subprocess
