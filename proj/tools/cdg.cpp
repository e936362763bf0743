// cdg: command-line front end.
//
// Exit codes: 0 success, 1 domain failure, 2 usage, 3 budget exhausted.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cdgraph/conjecture.hpp"
#include "cdgraph/serialize.hpp"
#include "cdgraph/verify.hpp"

namespace {

using namespace cdg;

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Nat numeral(const std::string& flag, const std::string& text) {
  try {
    return parse_nat(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + flag + ": malformed numeral '" + text + "'");
  }
}

std::uint64_t small_numeral(const std::string& flag, const std::string& text) {
  const Nat v = numeral(flag, text);
  if (!fits_u64(v)) throw UsageError("--" + flag + ": value too large");
  return to_u64(v);
}

struct Global {
  std::string format = "json";
  std::string output;
  std::string seed = "0";
  std::string rho = std::to_string(FactorBudget{}.rho_iterations);
  std::string jobs = "1";

  FactorBudget budget() const {
    FactorBudget b;
    b.rho_iterations = small_numeral("rho-iterations", rho);
    return b;
  }
};

// Writes `text` to --output or stdout.
void emit(const Global& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.output, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + g.output);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string report_text(const Report& rep) {
  std::ostringstream os;
  for (const auto& c : rep.checks) {
    os << to_string(c.status) << "  " << c.name;
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  os << rep.failures() << " failed of " << rep.checks.size() << "\n";
  return os.str();
}

Params checked_params(const std::string& p, const std::string& n) {
  return validate(numeral("p", p), small_numeral("n", n));
}

std::string invalid_text(const Params& prm) {
  std::string s = "invalid parameters:";
  for (const auto& r : prm.reasons()) s += " " + r;
  return s + "\n";
}

// --- subcommands -----------------------------------------------------------

int cmd_validate(const Global& g, const std::string& p, const std::string& n) {
  const Params prm = checked_params(p, n);
  if (g.format == "text") {
    emit(g, prm.valid() ? std::string("valid\n") : invalid_text(prm));
  } else {
    emit(g, dump(to_json(prm)));
  }
  return prm.valid() ? kOk : kDomain;
}

int cmd_profile(const Global& g, const std::string& p, const std::string& n) {
  const Params prm = checked_params(p, n);
  if (!prm.valid()) {
    std::cerr << invalid_text(prm);
    return kDomain;
  }
  const auto budget = g.budget();
  const FullProfile fp = build_profile(prm, budget);
  const GraphProfile& prof = fp.profile;
  const Report st = structure_theorem_check(prm, prof, budget);
  const Report diag = construction_diagnostics(prm, prof, budget);
  if (g.format == "text") {
    std::ostringstream os;
    os << "vertices  " << prof.graph.size() << "\n"
       << "diameter  " << to_string(prof.diameter) << "\n"
       << "pi0       " << detail::format_set(prof.pi0) << "\n"
       << "pi1       " << detail::format_set(prof.pi1) << "\n"
       << "alpha     " << detail::format_set(prof.alpha) << "\n"
       << "beta      " << detail::format_set(prof.beta) << "\n"
       << "gamma     " << detail::format_set(prof.gamma) << "  (" << prof.gamma.size() << ")\n"
       << "delta     " << detail::format_set(prof.delta) << "\n";
    if (prof.is_diameter_three()) {
      const auto tb = theorem_b_check(prof);
      os << "bound     |gamma| = " << prof.gamma.size() << " >= " << tb.bound << (tb.ok ? "  ok" : "  VIOLATED") << "\n";
    }
    os << report_text(st);
    emit(g, os.str());
  } else if (g.format == "dot") {
    emit(g, export_dot(prof.graph, &prof));
  } else {
    Json j = to_json(prof);
    j["structure_theorem"] = to_json(st);
    j["diagnostics"] = to_json(diag);
    emit(g, dump(j));
  }
  return st.all_ok() ? kOk : kDomain;
}

int cmd_search(const Global& g, const std::string& c, const std::string& l, const std::string& candidates) {
  const std::uint64_t cc = small_numeral("c", c), ll = small_numeral("l", l);
  if (cc < 1 || ll < 1) throw UsageError("--c and --l must be >= 1");
  SearchBudget budget;
  budget.candidates = small_numeral("candidates", candidates);
  const SearchOutcome out = search_lemma41(cc, ll, budget);
  if (!out.ok) {
    std::cerr << "search: " << out.failure << "\n";
    return kBudget;
  }
  const Report rep = verify_witness(out.witness);
  if (g.format == "text") {
    std::ostringstream os;
    os << "p = " << out.witness.p << "\nn = " << out.witness.n << "\n" << report_text(rep);
    emit(g, os.str());
  } else {
    Json j = to_json(out.witness);
    j["checks"] = to_json(rep);
    emit(g, dump(j));
  }
  return rep.all_ok() ? kOk : kDomain;
}

int cmd_verify(const Global& g, const std::string& p, const std::string& n, const std::string& samples) {
  const Params prm = checked_params(p, n);
  VerifyOptions opt;
  opt.seed = small_numeral("seed", g.seed);
  opt.samples = small_numeral("samples", samples);
  opt.budget = g.budget();
  const Report rep = run_verify_suite(prm, opt);
  if (g.format == "text") {
    emit(g, report_text(rep));
  } else {
    Json j;
    j["p"] = prm.p.str();
    j["n"] = std::to_string(prm.n);
    j["failures"] = rep.failures();
    j["checks"] = to_json(rep);
    emit(g, dump(j));
  }
  return rep.all_ok() ? kOk : kDomain;
}

int cmd_scan(const Global& g, const std::string& max_n, bool full) {
  const std::uint64_t nmax = small_numeral("max-n", max_n);
  if (nmax < 3) throw UsageError("--max-n must be >= 3");
  ScanOptions opt;
  opt.budget = g.budget();
  opt.jobs = static_cast<unsigned>(small_numeral("jobs", g.jobs));
  opt.early_exit = !full;
  const auto rows = scan_conjecture(nmax, opt);
  bool fail = false, inconclusive = false;
  for (const auto& r : rows) {
    fail = fail || r.verdict == Verdict::fail;
    inconclusive = inconclusive || r.verdict == Verdict::inconclusive;
  }
  if (g.format == "text") {
    std::ostringstream os;
    os << std::setw(6) << "n" << std::setw(4) << "l" << std::setw(7) << "omega" << std::setw(8) << "target"
       << "  " << std::left << std::setw(13) << "verdict" << "parity" << std::right << "\n";
    for (const auto& r : rows) {
      if (r.verdict == Verdict::excluded) continue;
      os << std::setw(6) << r.n << std::setw(4) << r.l << std::setw(6) << r.omega << (r.omega_complete ? " " : "+")
         << std::setw(8) << r.target << "  " << std::left << std::setw(13) << to_string(r.verdict)
         << (r.n % 2 == 0 ? "even" : "odd") << std::right << "\n";
    }
    emit(g, os.str());
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    emit(g, dump(arr));
  }
  if (fail) return kDomain;
  return inconclusive ? kBudget : kOk;
}

int cmd_degrees(const Global& g, const std::string& p, const std::string& n, bool quotient) {
  const Params prm = checked_params(p, n);
  if (!prm.valid()) {
    std::cerr << invalid_text(prm);
    return kDomain;
  }
  const DegreeTable table = quotient ? quotient_table(prm, g.budget()) : build_table(prm, g.budget());
  if (g.format == "text") {
    std::ostringstream os;
    os << "|G| = " << table.group_order.value << "\n";
    for (const auto& row : table.rows) {
      os << std::left << std::setw(10) << to_string(row.source) << std::setw(40) << format_factored(row.degree)
         << std::right << row.multiplicity << "\n";
    }
    os << "sum of squares " << (check_sum_of_squares(table) ? "ok" : "MISMATCH") << "\n";
    emit(g, os.str());
  } else {
    emit(g, dump(to_json(table)));
  }
  return kOk;
}

int cmd_graph(const Global& g, const std::string& p, const std::string& n, const std::string& dot_file) {
  const Params prm = checked_params(p, n);
  if (!prm.valid()) {
    std::cerr << invalid_text(prm);
    return kDomain;
  }
  const FullProfile fp = build_profile(prm, g.budget());
  const std::string dot = export_dot(fp.profile.graph, &fp.profile);
  if (!dot_file.empty()) {
    std::ofstream f(dot_file, std::ios::binary);
    if (!f) throw UsageError("cannot open " + dot_file);
    f << dot;
  }
  if (g.format == "dot") {
    emit(g, dot);
  } else if (g.format == "text") {
    std::ostringstream os;
    for (const auto& v : fp.profile.graph.vertices()) {
      os << v << ":";
      for (std::size_t u : fp.profile.graph.neighbors(fp.profile.graph.index_of(v))) {
        os << " " << fp.profile.graph.vertex(u);
      }
      os << "\n";
    }
    os << "diameter " << to_string(fp.profile.diameter) << "\n";
    emit(g, os.str());
  } else {
    Json j = graph_json(fp.profile.graph);
    j["diameter"] = diameter_json(fp.profile.diameter);
    emit(g, dump(j));
  }
  return kOk;
}

int cmd_factor(const Global& g, const std::string& x) {
  const Nat v = numeral("x", x);
  if (v < 1) throw UsageError("--x must be >= 1");
  const Factored f = factor(v, g.budget());
  if (g.format == "text") {
    emit(g, v.str() + " = " + format_factored(f) + "\n");
  } else {
    emit(g, dump(to_json(f)));
  }
  return f.complete() ? kOk : kBudget;
}

int cmd_cyclotomic(const Global& g, const std::string& d, const std::string& q) {
  const std::uint64_t dd = small_numeral("d", d);
  const Nat qq = numeral("q", q);
  if (dd < 1 || qq < 2) throw UsageError("need --d >= 1 and --q >= 2");
  const CyclotomicValue cv = phi_at(dd, qq, g.budget());
  if (g.format == "text") {
    emit(g, cv.value.value.str() + " = " + format_factored(cv.value) + "\n");
  } else {
    Json j;
    j["d"] = dd;
    j["q"] = qq.str();
    j["value"] = cv.value.value.str();
    j["factorization"] = to_json(cv.value);
    emit(g, dump(j));
  }
  return cv.value.complete() ? kOk : kBudget;
}

int cmd_omega(const Global& g, const std::string& q, const std::string& n) {
  const Nat qq = numeral("q", q);
  const std::uint64_t nn = small_numeral("n", n);
  if (qq < 2 || nn < 1) throw UsageError("need --q >= 2 and --n >= 1");
  const LemmaNtReport rep = check_lemma_nt(qq, nn, g.budget());
  const Nat mod_n = nn;
  const bool observe = gcd(mod(powm(qq, mod_n, mod_n) - 1, mod_n), mod_n) == 1;
  std::optional<ObservationReport> obs;
  if (observe) obs = check_observation(qq, nn, g.budget());
  if (g.format == "text") {
    std::ostringstream os;
    os << "hypothesis gcd = " << rep.hypothesis_gcd << (rep.hypothesis_ok ? "" : "  (not met)") << "\n";
    for (const auto& row : rep.rows) {
      os << "m=" << row.m << "  omega=" << row.omega.count << (row.omega.complete ? "" : "+") << "  bound=" << row.bound
         << "  " << (row.ok ? "ok" : "VIOLATED") << "\n";
    }
    if (obs) os << "omega(q^n-1) = " << obs->omega << "  bound " << obs->bound << "  " << to_string(obs->verdict) << "\n";
    emit(g, os.str());
  } else {
    Json j;
    j["q"] = qq.str();
    j["n"] = nn;
    j["hypothesis_gcd"] = rep.hypothesis_gcd.str();
    j["hypothesis_ok"] = rep.hypothesis_ok;
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
      Json r;
      r["m"] = row.m;
      r["omega"] = row.omega.count;
      r["complete"] = row.omega.complete;
      r["bound"] = row.bound;
      r["ok"] = row.ok;
      rows.push_back(r);
    }
    j["rows"] = rows;
    if (obs) {
      j["observation"] = {{"omega", obs->omega}, {"bound", obs->bound.str()}, {"verdict", to_string(obs->verdict)}};
    } else {
      j["observation"] = nullptr;
    }
    emit(g, dump(j));
  }
  if (!rep.all_ok() || (obs && obs->verdict == Verdict::fail)) return kDomain;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character degree graphs of solvable groups: tables, prime graphs and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--output,-o", g.output, "Write output to this file");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--rho-iterations", g.rho, "Pollard-rho iterations per composite");
  app.add_option("--jobs,-j", g.jobs, "Worker threads for scan");

  std::string p, n, c, l, x, d, q, max_n, dot_file;
  std::string candidates = std::to_string(SearchBudget{}.candidates);
  std::string samples = std::to_string(VerifyOptions{}.samples);
  bool full = false, quotient = false;

  auto need_pn = [&](CLI::App* sub) {
    sub->add_option("--p", p, "Prime p")->required();
    sub->add_option("--n", n, "Exponent n")->required();
  };
  auto* validate_cmd = app.add_subcommand("validate", "Check the parameter conditions on (p, n)");
  need_pn(validate_cmd);
  auto* profile_cmd = app.add_subcommand("profile", "Prime graph profile with class partition");
  need_pn(profile_cmd);
  auto* search_cmd = app.add_subcommand("search", "Construct (p, n) with prescribed prime counts");
  search_cmd->add_option("--c", c, "Minimum number of primes of p^2+p+1")->required();
  search_cmd->add_option("--l,--ell", l, "Number of primes of n (squarefree)")->required();
  search_cmd->add_option("--candidates,--budget", candidates, "Candidates per progression scan");
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  need_pn(verify_cmd);
  verify_cmd->add_option("--samples", samples, "Random samples per group-law check");
  auto* scan_cmd = app.add_subcommand("scan", "Scan omega(2^n-1) against 2^l");
  scan_cmd->add_option("--max-n", max_n, "Largest n")->required();
  scan_cmd->add_flag("--full", full, "Factor completely instead of stopping at the target");
  auto* degrees_cmd = app.add_subcommand("degrees", "Character degree table");
  need_pn(degrees_cmd);
  degrees_cmd->add_flag("--quotient", quotient, "Only the degrees of G/P_3");
  auto* graph_cmd = app.add_subcommand("graph", "Prime graph");
  need_pn(graph_cmd);
  graph_cmd->add_option("--dot", dot_file, "Also write DOT to this file");
  auto* factor_cmd = app.add_subcommand("factor", "Factor an integer");
  factor_cmd->add_option("--x", x, "Integer >= 1")->required();
  auto* cyclo_cmd = app.add_subcommand("cyclotomic", "Value of the d-th cyclotomic polynomial at q");
  cyclo_cmd->add_option("--d", d, "Index d")->required();
  cyclo_cmd->add_option("--q", q, "Argument q")->required();
  auto* omega_cmd = app.add_subcommand("omega", "Prime counts of (q^n-1)/(q^m-1) for m | n");
  omega_cmd->add_option("--q", q, "Base q")->required();
  omega_cmd->add_option("--n", n, "Exponent n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(g, p, n);
    if (*profile_cmd) return cmd_profile(g, p, n);
    if (*search_cmd) return cmd_search(g, c, l, candidates);
    if (*verify_cmd) return cmd_verify(g, p, n, samples);
    if (*scan_cmd) return cmd_scan(g, max_n, full);
    if (*degrees_cmd) return cmd_degrees(g, p, n, quotient);
    if (*graph_cmd) return cmd_graph(g, p, n, dot_file);
    if (*factor_cmd) return cmd_factor(g, x);
    if (*cyclo_cmd) return cmd_cyclotomic(g, d, q);
    if (*omega_cmd) return cmd_omega(g, q, n);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
