#pragma once

// Shared helpers for the test suites: string-based reference implementations
// (kept independent of the packed-word code paths) and a tiny process runner
// for CLI golden tests.

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace testsupport {

inline std::string rotate_string(const std::string& s, std::size_t k) {
  std::string out(s.size(), '?');
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[(i + k) % s.size()];
  return out;
}

struct NecklaceRef {
  std::string least;
  std::size_t period;
};

// Plain enumeration of every rotation.
inline NecklaceRef necklace_reference(const std::string& s) {
  NecklaceRef ref{s, s.size()};
  for (std::size_t k = 1; k < s.size(); ++k) {
    const std::string r = rotate_string(s, k);
    if (r < ref.least) ref.least = r;
  }
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (rotate_string(s, k) == s) {
      ref.period = k;
      break;
    }
  }
  return ref;
}

inline bool is_rotation_of(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (rotate_string(a, k) == b) return true;
  return false;
}

struct CommandResult {
  std::string output;  // stdout only
  int status = -1;
};

inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buffer;
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int rc = pclose(pipe);
  if (WIFEXITED(rc)) result.status = WEXITSTATUS(rc);
  return result;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace testsupport
