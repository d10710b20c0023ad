#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace queerkit {

enum class Status { pass, fail, inconclusive };

const char* status_name(Status s);

// First offending entry or coefficient of a failed comparison.
struct Witness {
  std::string location;
  std::string value;
};

struct VerificationReport {
  std::string identity;
  int n = 0;
  std::string method = "exact";
  Status status = Status::pass;
  std::optional<Witness> witness;
  std::optional<int> sign_convention;
  long millis = 0;
  std::map<std::string, std::string> metadata;

  bool passed() const { return status == Status::pass; }
};

// Runs independent checks on at most QUEERKIT_THREADS worker threads and
// returns the reports sorted by identity name. Exceptions in a check are
// rethrown after all workers finish.
std::vector<VerificationReport> run_checks(std::vector<std::function<VerificationReport()>> checks);

// Worker count from QUEERKIT_THREADS, else the hardware concurrency.
unsigned worker_count();

// Runs f and stores the elapsed wall time in the report.
VerificationReport timed(const std::function<VerificationReport()>& f);

}  // namespace queerkit
