// Command-line front end: computations, verification suites, and
// JSON/LaTeX/text emitters. Exit codes: 0 success / all checks passed,
// 1 at least one check failed, 2 usage or guard error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "qcube/checks.hpp"
#include "qcube/commutant.hpp"
#include "qcube/grassmann.hpp"
#include "qcube/serialize.hpp"
#include "qcube/signed_sets.hpp"
#include "qcube/spectral.hpp"
#include "qcube/treecount.hpp"

using namespace qcube;

namespace {

int cmd_complexity(int n, const std::string& format, long q, long max_bits) {
  FactoredExpr e = spanning_tree_formula(n);
  if (format == "json") {
    json j = to_json(e);
    if (q > 0) {
      j["q"] = q;
      j["value"] = evaluate_factored(e, q, max_bits).get_str();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << (format == "latex" ? to_latex(e) : to_text(e)) << "\n";
  if (q > 0) std::cout << evaluate_factored(e, q, max_bits).get_str() << "\n";
  return 0;
}

int cmd_factor(int n, int k, int j, const std::string& format) {
  QPoly f = factor_poly(n, k, j);
  if (format == "json")
    std::cout << to_json(f).dump(2) << "\n";
  else
    std::cout << f.str(format == "latex") << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, int nmax, std::vector<int> primes,
               unsigned seed, int jobs, bool no_timings) {
  if (primes.empty()) primes = {2, 3};
  std::vector<NamedCheck> checks;
  if (suite == "formula")
    checks = checks::formula_suite(nmax, primes);
  else if (suite == "positivity")
    checks = checks::positivity_suite(nmax);
  else if (suite == "signedsets")
    checks = checks::signedsets_suite(nmax, seed);
  else if (suite == "spectral")
    checks = checks::spectral_suite(nmax);
  else if (suite == "commutant")
    checks = checks::commutant_suite(nmax, primes, seed);
  else
    checks = checks::all_suites(nmax, primes, seed);

  auto results = run_checks(checks, jobs);
  json jchecks = json::array();
  int pass = 0, fail = 0, guard = 0;
  for (const auto& r : results) {
    (r.status == "pass" ? pass : r.status == "fail" ? fail : guard)++;
    jchecks.push_back(json{{"name", r.name},
                           {"status", r.status},
                           {"ms", no_timings ? 0.0 : r.ms},
                           {"info", r.info}});
    std::fprintf(stderr, "%-5s %s (%.1f ms) %s\n", r.status.c_str(), r.name.c_str(),
                 r.ms, r.info.c_str());
  }
  json report{{"suite", suite},
              {"params",
               json{{"nmax", nmax}, {"primes", primes}, {"seed", seed}, {"jobs", jobs}}},
              {"checks", jchecks},
              {"counts", json{{"pass", pass}, {"fail", fail}, {"guard", guard}}},
              {"passed", fail == 0}};
  std::cout << report.dump(2) << "\n";
  return fail == 0 ? 0 : 1;
}

int cmd_conjecture(int nmax, std::vector<double> qs) {
  if (qs.empty()) qs = {2.0};
  json out = json::array();
  for (const auto& e : distinct_eigenvalue_scan(nmax, qs)) out.push_back(to_json(e));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_spectrum(int n, double q) {
  json blocks = json::array();
  for (int k = 0; 2 * k <= n; ++k) {
    QPoly mult = qbinom(n, k) - qbinom(n, k - 1);
    blocks.push_back(
        json{{"k", k},
             {"eigenvalues", block_eigenvalues(laplacian_block(n, k, q))},
             {"multiplicity", to_json(mult)},
             {"multiplicity_at_q", mult.eval(q)}});
  }
  std::cout << json{{"n", n}, {"q", q}, {"blocks", blocks}}.dump(2) << "\n";
  return 0;
}

int cmd_blocks(int n, int i, int j, int t, double q) {
  json beta = json::array();
  for (int k = 0; 2 * k <= n; ++k)
    beta.push_back(json{{"k", k}, {"poly", to_json(image_scalar_poly(n, i, j, k, t))}});
  json out{{"n", n},      {"i", i},
           {"j", j},      {"t", t},
           {"q", q},      {"image", to_json(orbit_image(n, i, j, t, q))},
           {"beta", beta}};
  if (i == j && 2 * i <= n) {
    json tau = json::array();
    for (int k = 0; k <= i; ++k)
      tau.push_back(json{{"k", k}, {"poly", to_json(johnson_eigenvalue_poly(n, i, t, k))}});
    out["tau"] = tau;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spanning-tree counts and commutant block diagonalization for "
               "subspace-lattice graphs over F_q"};
  app.require_subcommand(1);

  int n = 0, k = 0, j = 0, i = 0, t = 0, nmax = 0, jobs = 1;
  long q_int = 0, max_bits = kDefaultMaxBits;
  double q_real = 2.0;
  unsigned seed = 0;
  bool no_timings = false;
  std::string format = "text", suite = "all";
  std::vector<int> primes;
  std::vector<double> q_list;

  auto* c = app.add_subcommand("complexity", "factored spanning-tree formula");
  c->add_option("--n", n, "lattice dimension")->required();
  c->add_option("--format", format, "json|latex|text");
  c->add_option("--q", q_int, "evaluate at integer q >= 1 (guarded)");
  c->add_option("--max-bits", max_bits, "bit-size guard for expansion");

  auto* f = app.add_subcommand("factor", "one factor polynomial of the formula");
  f->add_option("--n", n, "lattice dimension")->required();
  f->add_option("--k", k, "chain start rank")->required();
  f->add_option("--j", j, "trailing index")->required();
  f->add_option("--format", format, "json|latex|text");

  auto* v = app.add_subcommand("verify", "run verification suites");
  v->add_option("--suite", suite, "formula|positivity|signedsets|spectral|commutant|all");
  v->add_option("--nmax", nmax, "cap the n ranges (0 = suite defaults)");
  v->add_option("--prime", primes, "oracle primes (repeatable)");
  v->add_option("--seed", seed, "seed for sampled checks");
  v->add_option("--jobs", jobs, "worker threads");
  v->add_flag("--no-timings", no_timings, "zero the ms fields (byte-stable output)");

  auto* cj = app.add_subcommand("conjecture", "distinct-eigenvalue scan (report only)");
  cj->add_option("--nmax", nmax, "scan n = 1..nmax")->required();
  cj->add_option("--q", q_list, "evaluation points (repeatable)");

  auto* sp = app.add_subcommand("spectrum", "block eigenvalues and multiplicities");
  sp->add_option("--n", n, "lattice dimension")->required();
  sp->add_option("--q", q_real, "evaluation point");

  auto* bl = app.add_subcommand("blocks", "image of an orbit-basis element");
  bl->add_option("--n", n, "lattice dimension")->required();
  bl->add_option("--i", i, "row dimension")->required();
  bl->add_option("--j", j, "column dimension")->required();
  bl->add_option("--t", t, "intersection dimension")->required();
  bl->add_option("--q", q_real, "evaluation point");

  auto* ss = app.add_subcommand("signedsets", "dump the signed-set family as JSON");
  ss->add_option("--n", n, "family index")->required();

  auto* gr = app.add_subcommand("graph", "dump the lattice graph edge list");
  gr->add_option("--n", n, "lattice dimension")->required();
  gr->add_option("--prime", primes, "field size (prime)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c)) return cmd_complexity(n, format, q_int, max_bits);
    if (app.got_subcommand(f)) return cmd_factor(n, k, j, format);
    if (app.got_subcommand(v)) return cmd_verify(suite, nmax, primes, seed, jobs, no_timings);
    if (app.got_subcommand(cj)) return cmd_conjecture(nmax, q_list);
    if (app.got_subcommand(sp)) return cmd_spectrum(n, q_real);
    if (app.got_subcommand(bl)) return cmd_blocks(n, i, j, t, q_real);
    if (app.got_subcommand(ss)) {
      std::cout << signed_sets_json(n).dump(2) << "\n";
      return 0;
    }
    if (app.got_subcommand(gr)) {
      std::cout << edge_list_text(n, primes.at(0));
      return 0;
    }
  } catch (const guard_error& e) {
    std::fprintf(stderr, "guard: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
