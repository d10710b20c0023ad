#include "queerkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "queerkit/errors.hpp"
#include "queerkit/queer.hpp"
#include "queerkit/rmatrix.hpp"

namespace queerkit {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  int n = 1;
  unsigned R = 1;
  unsigned k = 4;
  unsigned order = 6;
  std::string method;
  std::string suite;
  std::string out;
  std::string format = "json";
  bool timing = false;
  std::vector<std::string> names;
  std::string op;
  std::string mode;
  std::string algebra = "finite";
};

json to_json(const VerificationReport& r, bool timing) {
  json j;
  j["identity"] = r.identity;
  j["n"] = r.n;
  j["method"] = r.method;
  j["status"] = status_name(r.status);
  if (r.witness) j["witness"] = {{"location", r.witness->location}, {"value", r.witness->value}};
  if (r.sign_convention) j["sign_convention"] = *r.sign_convention > 0 ? "+1" : "-1";
  j["millis"] = timing ? r.millis : 0;
  if (!r.metadata.empty()) {
    json m = json::object();
    for (const auto& [k, v] : r.metadata) m[k] = v;
    j["metadata"] = m;
  }
  return j;
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream s;
  s << status_name(r.status) << ' ' << r.identity << " n=" << r.n << " method=" << r.method;
  if (r.sign_convention) s << " sign=" << (*r.sign_convention > 0 ? "+1" : "-1");
  if (r.witness) s << " at " << r.witness->location << ": " << r.witness->value;
  return s.str();
}

std::string render_reports(const std::vector<VerificationReport>& reports, const Options& o) {
  std::ostringstream s;
  for (const auto& r : reports) s << (o.format == "json" ? report_json(r, o.timing) : report_text(r)) << '\n';
  return s.str();
}

// JSON documents render in text mode as indented key: value lines.
void render_text(const json& j, std::ostringstream& s, int depth) {
  std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      s << pad << k << ":\n";
      render_text(v, s, depth + 1);
    } else if (v.is_array()) {
      s << pad << k << ":\n";
      for (const auto& e : v) s << pad << "  " << (e.is_string() ? e.get<std::string>() : e.dump()) << '\n';
    } else {
      s << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

std::string render_document(const json& j, const Options& o) {
  if (o.format == "json") return j.dump() + '\n';
  std::ostringstream s;
  render_text(j, s, 0);
  return s.str();
}

json reports_array(const std::vector<VerificationReport>& reports, const Options& o) {
  json a = json::array();
  for (const auto& r : reports) a.push_back(to_json(r, o.timing));
  return a;
}

Method default_method(const Options& o) {
  if (!o.method.empty()) return parse_method(o.method);
  return o.n == 1 ? Method::q1 : Method::rep;
}

void check_rank(const Options& o) {
  if (o.n < 1) throw InvalidInput("--n must be at least 1");
}

struct Outcome {
  std::string text;
  int code = exit_pass;
};

Outcome cmd_construct(const Options& o) {
  check_rank(o);
  NamedOperator op = named_operator(o.op, o.n);
  // A_uv is scalar; it is written as A times the two-slot identity.
  Tensor t = op.value ? *op.value : Tensor::identity(o.n, 2).scaled(*op.scalar);
  std::string ex = to_exchange(t);
  if (o.format == "text") return {ex};
  json j;
  j["operator"] = o.op;
  j["n"] = o.n;
  j["terms"] = t.terms().size();
  j["exchange"] = ex;
  return {j.dump() + '\n'};
}

std::vector<VerificationReport> verify_name(const std::string& name, const Options& o, Method m) {
  const auto& cn = constant_identity_names();
  if (std::find(cn.begin(), cn.end(), name) != cn.end()) {
    std::vector<VerificationReport> out;
    for (auto& r : identity_suite_constant(o.n)) {
      if (r.identity == name) out.push_back(std::move(r));
    }
    return out;
  }
  const auto& sn = spectral_identity_names();
  if (std::find(sn.begin(), sn.end(), name) != sn.end()) return identity_suite_spectral(o.n, {name});
  return run_queer_identity(name, o.n, m);
}

Outcome cmd_verify(const Options& o) {
  check_rank(o);
  if (o.suite.empty() && o.names.empty()) throw InvalidInput("verify needs identity names or --suite");
  Method m = default_method(o);
  if (m == Method::q1 && o.n != 1) throw InvalidInput("method q1 requires n = 1");
  std::vector<VerificationReport> reports;
  auto append = [&](std::vector<VerificationReport> v) {
    for (auto& r : v) reports.push_back(std::move(r));
  };
  if (o.suite == "constant" || o.suite == "all") append(identity_suite_constant(o.n));
  if (o.suite == "spectral" || o.suite == "all") append(identity_suite_spectral(o.n));
  if (o.suite == "all") append(queer_suite(o.n, m));
  for (const auto& name : o.names) append(verify_name(name, o, m));
  return {render_reports(reports, o), exit_code_for(reports)};
}

Outcome cmd_central(const Options& o) {
  check_rank(o);
  json j;
  j["mode"] = o.mode;
  j["n"] = o.n;
  std::vector<VerificationReport> reports;
  if (o.mode == "finite") {
    Method m = default_method(o);
    auto res = central_finite(o.n, o.k, m);
    j["method"] = method_name(m);
    j["elements"] = res.elements;
    reports = res.reports;
  } else {
    Method m = o.method.empty() ? Method::rep : parse_method(o.method);
    auto res = central_affine_z(o.n, o.order, m);
    j["method"] = method_name(m);
    if (res.Z) j["Z"] = res.Z->to_string();
    j["series"] = res.series;
    reports = res.reports;
  }
  j["reports"] = reports_array(reports, o);
  return {render_document(j, o), exit_code_for(reports)};
}

Outcome cmd_relations(const Options& o) {
  check_rank(o);
  AlgebraPresentation p = o.algebra == "finite" ? presentation_finite(o.n) : presentation_loop(o.n, o.R);
  if (o.format == "text") return {format_relations(p.relations)};
  json j;
  j["algebra"] = o.algebra;
  j["n"] = o.n;
  if (o.algebra == "loop") j["R"] = o.R;
  json rels = json::array();
  for (const auto& r : p.relations) rels.push_back(r.to_string());
  j["relations"] = rels;
  return {j.dump() + '\n'};
}

Outcome cmd_evalmap(const Options& o) {
  check_rank(o);
  Method m = default_method(o);
  std::vector<VerificationReport> reports;
  reports.push_back(verify_evaluation(o.n, m));
  for (auto& r : verify_ev_properties(o.n, m, o.R)) reports.push_back(std::move(r));
  if (o.n == 1) {
    for (auto& r : rank1_example_suite(o.order)) reports.push_back(std::move(r));
  }
  return {render_reports(reports, o), exit_code_for(reports)};
}

Outcome cmd_explore(const Options& o) {
  check_rank(o);
  auto reports = explore_conjecture(o.n, o.order);
  // Exploratory: the exit status reflects only whether the comparison ran.
  bool ran = std::none_of(reports.begin(), reports.end(),
                          [](const VerificationReport& r) { return r.status == Status::inconclusive; });
  return {render_reports(reports, o), ran ? exit_pass : exit_inconclusive};
}

}  // namespace

int exit_code_for(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.status == Status::fail) return exit_fail;
    if (r.status == Status::inconclusive) inconclusive = true;
  }
  return inconclusive ? exit_inconclusive : exit_pass;
}

std::string report_json(const VerificationReport& r, bool timing) { return to_json(r, timing).dump(); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact symbolic toolkit for the quantum queer superalgebra", "queerkit"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--n", o.n, "rank");
    c->add_option("--out", o.out, "output file");
    c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    c->add_flag("--timing", o.timing, "emit measured millis");
  };
  auto method_opt = [&](CLI::App* c) {
    c->add_option("--method", o.method, "q1, rep or exact")->check(CLI::IsMember({"q1", "rep", "exact"}));
  };
  CLI::App* construct = app.add_subcommand("construct", "write a named operator in exchange format");
  construct->add_option("op", o.op, "operator name")->required();
  common(construct);

  CLI::App* verify = app.add_subcommand("verify", "run identity checks");
  verify->add_option("names", o.names, "identity names");
  verify->add_option("--suite", o.suite, "constant, spectral or all")
      ->check(CLI::IsMember({"constant", "spectral", "all"}));
  method_opt(verify);
  common(verify);

  CLI::App* central = app.add_subcommand("central", "central elements");
  central->add_option("mode", o.mode, "finite or affine")->required()->check(CLI::IsMember({"finite", "affine"}));
  central->add_option("--k", o.k, "largest power");
  central->add_option("--order", o.order, "series order");
  method_opt(central);
  common(central);

  CLI::App* relations = app.add_subcommand("relations", "dump presentation relations");
  relations->add_option("--algebra", o.algebra, "finite or loop")->check(CLI::IsMember({"finite", "loop"}));
  relations->add_option("--R", o.R, "loop truncation");
  common(relations);

  CLI::App* evalmap = app.add_subcommand("evalmap", "evaluation homomorphism checks");
  evalmap->add_option("--order", o.order, "series order");
  evalmap->add_option("--R", o.R, "loop truncation");
  method_opt(evalmap);
  common(evalmap);

  CLI::App* explore = app.add_subcommand("explore-conjecture", "exploratory comparison, never asserted");
  explore->add_option("--order", o.order, "series order");
  common(explore);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  Outcome res;
  try {
    if (*construct) {
      res = cmd_construct(o);
    } else if (*verify) {
      res = cmd_verify(o);
    } else if (*central) {
      res = cmd_central(o);
    } else if (*relations) {
      res = cmd_relations(o);
    } else if (*evalmap) {
      res = cmd_evalmap(o);
    } else {
      res = cmd_explore(o);
    }
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  }
  if (o.out.empty()) {
    out << res.text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << o.out << '\n';
      return exit_usage;
    }
    f << res.text;
  }
  return res.code;
}

}  // namespace queerkit
