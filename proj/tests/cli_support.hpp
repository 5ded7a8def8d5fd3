#pragma once

// Runs the CLI binary through the shell and captures stdout and the exit code.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace testing_support {

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

inline std::string cli_path() { return PPSZ_CLI_PATH; }
inline std::string sample(const std::string& name) { return std::string(PPSZ_SAMPLES_DIR) + "/" + name; }

// stderr is discarded unless the arguments redirect it.
inline CommandResult run_cli(const std::string& args) {
  const bool keeps_stderr = args.find("2>") != std::string::npos;
  const std::string cmd = "'" + cli_path() + "' " + args + (keeps_stderr ? "" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed: " + cmd);
  CommandResult r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace testing_support
