#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "queerkit/cli.hpp"
#include "queerkit/tensor.hpp"

using namespace queerkit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("construct writes the exchange format") {
  auto s = cli({"construct", "S", "--n", "1", "--format", "text"});
  CHECK(s.code == exit_pass);
  CHECK(parse_exchange(s.out).terms().size() == 6);
  auto d = cli({"construct", "D", "--n", "2"});
  REQUIRE(d.code == exit_pass);
  auto j = nlohmann::json::parse(d.out);
  CHECK(j["terms"] == 4);
  Tensor D = parse_exchange(j["exchange"].get<std::string>());
  CHECK(to_exchange(D) == j["exchange"].get<std::string>());
  CHECK(*D.coefficient(key::make({{2, 2}})) == RatFunc::parse("1/q^4"));
  CHECK(*D.coefficient(key::make({{-1, -1}})) == RatFunc::parse("1/q^2"));
  auto a = cli({"construct", "A_uv", "--n", "1", "--format", "text"});
  CHECK(a.code == exit_pass);
  CHECK(parse_exchange(a.out).slots() == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({"construct", "X", "--n", "1"}).code == exit_usage);
  CHECK(cli({"verify", "--suite", "constant", "--n", "0"}).code == exit_usage);
  CHECK(cli({"verify", "--suite", "bogus"}).code == exit_usage);
  CHECK(cli({"verify", "ev.rtt", "--n", "2", "--method", "q1"}).code == exit_usage);
  CHECK(cli({"verify", "no.such.identity", "--n", "1"}).code == exit_usage);
  CHECK(cli({"verify", "--n", "1"}).code == exit_usage);
  CHECK(cli({}).code == exit_usage);
  CHECK(!cli({"construct", "X"}).err.empty());
}

TEST_CASE("verify streams one report per check") {
  auto r = cli({"verify", "--suite", "constant", "--n", "2"});
  CHECK(r.code == exit_pass);
  auto v = lines(r.out);
  CHECK(v.size() == 12);
  for (const auto& j : v) {
    CHECK(j["status"] == "pass");
    CHECK(j["millis"] == 0);
    CHECK(j["n"] == 2);
  }
  auto one = lines(cli({"verify", "cross.aff.t1", "--n", "1"}).out);
  REQUIRE(one.size() == 1);
  CHECK(one[0]["identity"] == "cross.aff.t1");
}

TEST_CASE("exit codes follow the report statuses") {
  VerificationReport p, f, i;
  f.status = Status::fail;
  i.status = Status::inconclusive;
  CHECK(exit_code_for({p, p}) == exit_pass);
  CHECK(exit_code_for({p, i}) == exit_inconclusive);
  CHECK(exit_code_for({i, f}) == exit_fail);
  CHECK(exit_code_for({}) == exit_pass);
}

TEST_CASE("report JSON field order") {
  VerificationReport r;
  r.identity = "x";
  r.n = 1;
  r.method = "q1";
  r.sign_convention = -1;
  r.millis = 17;
  r.witness = Witness{"(1,1)", "2"};
  CHECK(report_json(r, false) ==
        R"js({"identity":"x","n":1,"method":"q1","status":"pass","witness":{"location":"(1,1)","value":"2"},"sign_convention":"-1","millis":0})js");
  CHECK(report_json(r, true).find("\"millis\":17") != std::string::npos);
}

TEST_CASE("central, relations and evalmap") {
  auto c = cli({"central", "finite", "--n", "1", "--k", "3"});
  CHECK(c.code == exit_pass);
  auto j = nlohmann::json::parse(c.out);
  CHECK(j["elements"].size() == 3);
  CHECK(j["reports"].size() == 3);
  auto a = cli({"central", "affine", "--n", "1", "--order", "4"});
  CHECK(a.code == exit_pass);
  auto ja = nlohmann::json::parse(a.out);
  CHECK(ja.contains("Z"));
  CHECK(ja["series"].size() == 5);
  CHECK(ja["series"][0] == "1");
  CHECK(cli({"central", "finite", "--n", "3", "--k", "2", "--method", "rep"}).code == exit_pass);
  auto rel = cli({"relations", "--algebra", "finite", "--n", "1", "--format", "text"});
  CHECK(rel.code == exit_pass);
  CHECK(rel.out.find("L[1,1]*L[-1,1] - L[-1,1]*L[1,1]") != std::string::npos);
  auto loop = cli({"relations", "--algebra", "loop", "--n", "1", "--R", "0"});
  CHECK(nlohmann::json::parse(loop.out)["R"] == 0);
  auto ev = cli({"evalmap", "--n", "1", "--order", "6"});
  CHECK(ev.code == exit_pass);
  bool sign = false;
  for (const auto& r : lines(ev.out)) sign |= r.contains("sign_convention");
  CHECK(sign);
  auto ex = cli({"explore-conjecture", "--n", "2", "--order", "2", "--format", "text"});
  CHECK(ex.code == exit_pass);
  CHECK(ex.out.find("explore.z-vs-central") != std::string::npos);
}
