#ifndef ZETATAIL_CLI_HPP
#define ZETATAIL_CLI_HPP

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "zetatail/formula_catalog.hpp"

namespace zetatail::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, ambiguous = 3 };

/// Runs the command line `args` (without the program name). Payload goes to
/// `out`; diagnostics and, under --json, the timing sidecar go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Line-delimited JSON store of floors keyed by (s, n, policy digest).
/// Lines for other policies are kept but ignored; unreadable lines (e.g. a
/// torn last write) are skipped and counted.
class FloorCache {
 public:
  FloorCache(std::filesystem::path path, std::string policy_digest);

  std::optional<Integer> lookup(long s, long n) const;
  /// Appends one line and flushes it; calls are serialized.
  void store(long s, long n, const Integer& floor);

  /// inner behind the cache: hits are served from memory, misses computed and appended.
  FloorOracle wrap(FloorOracle inner);

  long hits() const { return hits_; }
  long misses() const { return misses_; }
  long skipped_lines() const { return skipped_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::string digest_;
  mutable std::mutex lock_;
  std::map<std::pair<long, long>, Integer> entries_;
  std::atomic<long> hits_{0};
  std::atomic<long> misses_{0};
  long skipped_ = 0;
  /// The file ends in a torn line without its newline.
  bool needs_newline_ = false;
};

}  // namespace zetatail::cli

#endif  // ZETATAIL_CLI_HPP
