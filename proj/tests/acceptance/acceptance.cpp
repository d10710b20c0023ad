// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Optional argument: path of the queerkit tool for the determinism check.

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "queerkit/cli.hpp"
#include "queerkit/queer.hpp"
#include "queerkit/rmatrix.hpp"
#include "support/properties.hpp"

using namespace queerkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && first_.empty()) first_ = what;
    pass_ &= ok;
  }
  void reports(const std::vector<VerificationReport>& v, const std::string& ctx) {
    for (const auto& r : v) {
      std::string what = ctx + " " + r.identity + " n=" + std::to_string(r.n) + " " + status_name(r.status);
      if (r.witness) what += " at " + r.witness->location;
      expect(r.passed(), what);
    }
  }
  void require_names(const std::vector<VerificationReport>& v, const std::set<std::string>& names,
                     const std::string& ctx) {
    for (const auto& name : names) {
      auto it = std::find_if(v.begin(), v.end(), [&](const VerificationReport& r) { return r.identity == name; });
      expect(it != v.end() && it->passed(), ctx + " " + name);
    }
  }
  Outcome done(const std::string& summary) const {
    std::ostringstream s;
    s << summary << " (" << checks_ << " checks";
    if (!pass_) s << "; first failure: " << first_;
    s << ")";
    return {pass_, s.str()};
  }

 private:
  bool pass_ = true;
  unsigned checks_ = 0;
  std::string first_;
};

const VerificationReport* find(const std::vector<VerificationReport>& v, const std::string& name) {
  for (const auto& r : v) {
    if (r.identity == name) return &r;
  }
  return nullptr;
}

const std::vector<VerificationReport>& rank1_reports() {
  static const std::vector<VerificationReport> v = rank1_example_suite(6);
  return v;
}

Outcome constant_suite() {
  Tally t;
  std::set<std::string> names = {"ybe.const", "ssto", "spmin", "cross.fin.t1", "cross.fin.t2"};
  for (const auto& name : constant_identity_names()) {
    if (name.rfind("hc.", 0) == 0 || name.rfind("js.", 0) == 0) names.insert(name);
  }
  for (int n : {1, 2, 3}) {
    auto v = identity_suite_constant(n);
    t.require_names(v, names, "n=" + std::to_string(n));
    t.reports(v, "constant");
  }
  return t.done("constant identity suite at n = 1, 2, 3");
}

Outcome spectral_suite() {
  Tally t;
  const std::set<std::string> names = {"ybe.spectral", "cross.aff.t1", "cross.aff.t2", "unitarity.A"};
  for (int n : {1, 2}) {
    auto v = identity_suite_spectral(n);
    t.require_names(v, names, "n=" + std::to_string(n));
    t.reports(v, "spectral");
  }
  return t.done("spectral identity suite and unitarity at n = 1, 2");
}

Outcome evaluation() {
  Tally t;
  const std::set<std::string> exch = {"exch.LbarL.S",   "exch.LLbar.SmP", "exch.LbarLbar.SmPJJ", "exch.LbarL.PJJ",
                                      "exch.LLbar.PJJ", "exch.LL.PJJ",    "exch.LbarLbar.PJJ"};
  const std::vector<std::pair<int, Method>> runs = {{1, Method::q1}, {2, Method::rep}, {3, Method::rep}};
  for (auto [n, m] : runs) {
    t.reports({verify_evaluation(n, m)}, method_name(m));
    auto v = verify_exchange_relations(n, m);
    t.require_names(v, exch, method_name(m) + " n=" + std::to_string(n));
    t.reports(v, method_name(m));
  }
  // Negative control: a corrupted evaluation map must be rejected.
  t.expect(verify_evaluation(1, Method::q1, true).status == Status::fail, "corrupted ev accepted by q1");
  t.expect(verify_evaluation(2, Method::rep, true).status == Status::fail, "corrupted ev accepted by rep");
  return t.done("evaluation identity and seven exchange relations, q1 at n = 1, rep at n = 2, 3");
}

Outcome reflection() {
  Tally t;
  const std::set<std::string> names = {"refl.symmetry", "refl.equation", "refl.check-form", "refl.equivalence"};
  const std::vector<std::pair<int, Method>> runs = {{1, Method::q1}, {2, Method::rep}, {3, Method::rep}};
  for (auto [n, m] : runs) {
    auto v = verify_reflection(n, m);
    t.require_names(v, names, method_name(m) + " n=" + std::to_string(n));
    t.reports(v, method_name(m));
  }
  return t.done("MJMJ = -1 and both reflection-equation forms, q1 at n = 1, rep at n = 2, 3");
}

Outcome central_finite_elements() {
  Tally t;
  const VerificationReport* closed = find(rank1_reports(), "rank1.strM.closed");
  t.expect(closed && closed->passed(), "str M^{k+1} closed form, k = 0..6");
  t.expect(closed && closed->sign_convention.has_value(), "sign convention recorded");
  for (int n : {2, 3}) t.reports(central_finite(n, 4, Method::rep).reports, "rep");
  std::string sigma = closed && closed->sign_convention ? std::to_string(*closed->sign_convention) : "?";
  return t.done("rank-1 closed form with sigma = " + sigma + "; str D M^k scalar and central, n = 2, 3, k <= 4");
}

Outcome central_affine() {
  Tally t;
  t.reports(central_affine_z(1, 6, Method::rep).reports, "rep");
  std::string extra = "n = 2 representation not found";
  if (vector_rep(2, AlgebraMode::loop).verified) {
    t.reports(central_affine_z(2, 6, Method::rep).reports, "rep");
    extra = "n = 2 included";
  }
  return t.done("Z(u) D form, D^-1 form, scalar, Z = 1 + O(u^-1), n = 1; " + extra);
}

Outcome rank1_series() {
  Tally t;
  const auto& v = rank1_reports();
  const VerificationReport* closed = find(v, "rank1.strM.closed");
  const VerificationReport* product = find(v, "rank1.z.product");
  const VerificationReport* series = find(v, "rank1.z.series");
  t.expect(product && product->passed(), "ev z(u) product formula to u^-6");
  t.expect(series && series->passed(), "ev z(u) series identity to u^-6");
  t.expect(series && closed && series->sign_convention == closed->sign_convention, "same sigma");
  return t.done("rank-1 ev z(u) product formula and series identity to order u^-6");
}

Outcome properties() {
  Tally t;
  std::string summary;
  for (const auto& p : queerkit::testing::acceptance_properties()) {
    t.expect(p.passed(100), p.name + " " + std::to_string(p.failures) + "/" + std::to_string(p.instances));
    if (!summary.empty()) summary += ", ";
    summary += p.name + " " + std::to_string(p.instances) + " seed " + std::to_string(p.seed);
  }
  return t.done(summary);
}

std::string run_tool(const std::string& tool, const std::string& args, int* status) {
  std::string cmd = "\"" + tool + "\" " + args;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    *status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  *status = pclose(p);
  return out;
}

Outcome determinism(const std::string& tool) {
  Tally t;
  const std::vector<std::string> args = {"verify", "--suite", "all", "--n", "2"};
  std::string a, b;
  std::string how;
  if (!tool.empty()) {
    int sa = 0, sb = 0;
    a = run_tool(tool, "verify --suite all --n 2", &sa);
    b = run_tool(tool, "verify --suite all --n 2", &sb);
    t.expect(sa == sb, "exit statuses differ");
    how = "two processes";
  } else {
    std::ostringstream oa, ob, err;
    run_cli(args, oa, err);
    run_cli(args, ob, err);
    a = oa.str();
    b = ob.str();
    how = "two in-process runs";
  }
  t.expect(!a.empty(), "empty report stream");
  t.expect(a == b, "report streams differ");
  auto lines = static_cast<unsigned>(std::count(a.begin(), a.end(), '\n'));
  return t.done("verify --suite all --n 2, " + how + ", " + std::to_string(lines) + " reports, " +
                std::to_string(a.size()) + " bytes");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tool = argc > 1 ? argv[1] : "";
  const std::vector<std::function<Outcome()>> criteria = {
      constant_suite, spectral_suite,      evaluation,   reflection,
      central_finite_elements, central_affine, rank1_series, properties,
      [&] { return determinism(tool); }};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all &= o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << std::endl;
  return all ? 0 : 1;
}
