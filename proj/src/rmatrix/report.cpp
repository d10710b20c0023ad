#include "queerkit/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace queerkit {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "fail";
}

unsigned worker_count() {
  if (const char* env = std::getenv("QUEERKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

VerificationReport timed(const std::function<VerificationReport()>& f) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport r = f();
  auto end = std::chrono::steady_clock::now();
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
  return r;
}

std::vector<VerificationReport> run_checks(std::vector<std::function<VerificationReport()>> checks) {
  std::vector<VerificationReport> out(checks.size());
  std::vector<std::exception_ptr> errors(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= checks.size()) return;
      try {
        out[i] = timed(checks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = std::min<unsigned>(worker_count(), static_cast<unsigned>(checks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const VerificationReport& a, const VerificationReport& b) { return a.identity < b.identity; });
  return out;
}

}  // namespace queerkit
