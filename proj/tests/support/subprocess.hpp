#ifndef RDFSTAR_TESTS_SUBPROCESS_HPP
#define RDFSTAR_TESTS_SUBPROCESS_HPP

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// Minimal popen wrapper for exercising the CLI's exit-code contract.

namespace rdfstar::testsupport {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout
    std::string errors; // stderr
};

inline RunResult run_command(const std::string& command) {
    RunResult result;
    std::string stderr_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                              "/rdfstar_test_stderr.txt";
    std::string full = command + " 2>" + stderr_file;
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buffer{};
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(stderr_file);
    result.errors.assign(std::istreambuf_iterator<char>(err), std::istreambuf_iterator<char>());
    return result;
}

inline std::string write_temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace rdfstar::testsupport

#endif
