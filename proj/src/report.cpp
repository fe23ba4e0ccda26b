#include "geomver/report.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace geomver {

std::string CheckReport::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["check"] = check;
  j["total"] = total;
  j["failures"] = nlohmann::json::array();
  for (const auto& f : failures)
    j["failures"].push_back({{"element", f.element}, {"witness", f.witness}});
  j["elapsed_ms"] = elapsed_ms;
  return j.dump(2);
}

std::string CheckReport::to_csv() const {
  std::ostringstream os;
  os << "model,check,kind,element,witness,total,failures,elapsed_ms\n";
  for (const auto& f : failures) {
    std::string w = f.witness;
    std::replace(w.begin(), w.end(), ',', ';');
    os << model << "," << check << ",failure," << f.element << "," << w << ",,,\n";
  }
  os << model << "," << check << ",summary,,," << total << "," << failures.size() << ","
     << elapsed_ms << "\n";
  return os.str();
}

int default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_scan(long total, int workers,
                   const std::function<std::optional<std::string>(long)>& fn,
                   CheckReport& report) {
  report.total += total;
  if (workers < 1) workers = 1;
  if (workers == 1 || total < 2 * workers) {
    for (long i = 0; i < total; ++i)
      if (auto w = fn(i)) report.add_failure(i, *w);
    return;
  }
  std::vector<std::vector<CheckFailure>> partial(workers);
  std::vector<std::thread> threads;
  long chunk = (total + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    threads.emplace_back([&, t]() {
      long lo = t * chunk, hi = std::min<long>(total, (t + 1) * chunk);
      for (long i = lo; i < hi; ++i)
        if (auto w = fn(i)) partial[t].push_back({i, *w});
    });
  }
  for (auto& th : threads) th.join();
  for (auto& p : partial)
    for (auto& f : p) report.failures.push_back(std::move(f));
}

}  // namespace geomver
