#pragma once

// Machine-readable outcome of a verification scan.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace geomver {

struct CheckFailure {
  long element = -1;       // index of the scanned element, or -1
  std::string witness;
};

struct CheckReport {
  std::string model;
  std::string check;
  long total = 0;
  std::vector<CheckFailure> failures;
  long elapsed_ms = 0;

  bool pass() const { return failures.empty(); }
  void add_failure(long element, std::string witness) {
    failures.push_back({element, std::move(witness)});
  }

  std::string to_json() const;
  std::string to_csv() const;  // one row per failure plus a summary row
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Deterministic parallel scan: `fn(index)` returns a witness string on
// failure.  Failures are merged in index order regardless of worker count.
void parallel_scan(long total, int workers,
                   const std::function<std::optional<std::string>(long)>& fn,
                   CheckReport& report);

int default_workers();

}  // namespace geomver
