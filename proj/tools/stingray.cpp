// Command-line frontend: exact formula tables, the verification battery,
// exhaustive censuses, and seeded Monte Carlo experiments over GL_d(q).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "stingray/census.hpp"
#include "stingray/exactq.hpp"
#include "stingray/io.hpp"
#include "stingray/sampler.hpp"
#include "stingray/verify.hpp"

namespace sk = stingray;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  else
    sk::write_text_file(out_path, text);
}

struct FormulaRow {
  uint32_t e1, e2, q;
  sk::BigRat p, one_over_xi, one_minus_p_over_xi, lemma_bound;
  bool has_bounds = false, bounds_hold = false;
  sk::BigRat lower, upper;
  bool has_psy = false, psy_vacuous = false;
  sk::BigRat psy;
};

FormulaRow formula_row(uint32_t e1, uint32_t e2, uint32_t q) {
  FormulaRow r{e1, e2, q, {}, {}, {}, {}};
  const sk::KneserParams kp(e1, e2, q);
  r.p = sk::proportion_P(kp);
  r.one_over_xi = sk::duo_fraction(e1, e2, q);
  r.one_minus_p_over_xi = sk::reducible_pair_value(kp);
  r.lemma_bound = sk::reducible_pair_bound(q);
  if (e2 >= 2 || e1 >= 3) {
    auto b = sk::bounds_P(kp);
    r.has_bounds = true;
    r.bounds_hold = b.holds;
    r.lower = b.lower;
    r.upper = b.upper;
  }
  const uint32_t d = e1 + e2;
  if (d % 2 == 0) {
    r.has_psy = true;
    r.psy = sk::psy_pair_bound(d, q);
    r.psy_vacuous = r.psy >= 1;
  }
  return r;
}

std::string render_formula_rows(const std::vector<FormulaRow>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = {{"e1", r.e1},
                {"e2", r.e2},
                {"q", r.q},
                {"P", sk::rational_string(r.p)},
                {"P_decimal", sk::decimal12(r.p)},
                {"duo_fraction", sk::rational_string(r.one_over_xi)},
                {"reducible_pair", sk::rational_string(r.one_minus_p_over_xi)},
                {"reducible_pair_bound", sk::rational_string(r.lemma_bound)}};
      if (r.has_bounds) {
        j["lower"] = sk::rational_string(r.lower);
        j["upper"] = sk::rational_string(r.upper);
        j["bounds"] = r.bounds_hold ? "PASS" : "FAIL";
      }
      if (r.has_psy) {
        j["comparison_bound"] = sk::rational_string(r.psy);
        if (r.psy_vacuous) j["comparison_bound_vacuous"] = true;
      }
      arr.push_back(std::move(j));
    }
    json doc = {{"schema", sk::kSchema}, {"kind", "formulas"}, {"rows", arr}};
    os << doc.dump(2);
    return os.str();
  }
  const char sep = (format == "csv") ? ',' : '\t';
  os << "e1" << sep << "e2" << sep << "q" << sep << "P" << sep << "P_decimal" << sep << "bounds"
     << sep << "duo_fraction" << sep << "reducible_pair" << sep << "reducible_pair_bound" << sep
     << "comparison_bound\n";
  for (const auto& r : rows) {
    std::string bounds = "n/a";
    if (r.has_bounds)
      bounds = sk::rational_string(r.lower) + (r.bounds_hold ? " < P < " : " !< P !< ") +
               sk::rational_string(r.upper) + (r.bounds_hold ? " PASS" : " FAIL");
    std::string psy = "n/a";
    if (r.has_psy) psy = sk::rational_string(r.psy) + (r.psy_vacuous ? " (vacuous)" : "");
    os << r.e1 << sep << r.e2 << sep << r.q << sep << sk::rational_string(r.p) << sep
       << sk::decimal12(r.p) << sep << (format == "csv" ? sk::csv_escape(bounds) : bounds) << sep
       << sk::rational_string(r.one_over_xi) << sep
       << sk::rational_string(r.one_minus_p_over_xi) << sep
       << sk::rational_string(r.lemma_bound) << sep
       << (format == "csv" ? sk::csv_escape(psy) : psy) << "\n";
  }
  return os.str();
}

// The formulas assume e2 <= e1; the graph is symmetric in the two sides.
void normalize_sides(uint32_t& e1, uint32_t& e2) {
  if (e2 > e1) {
    std::swap(e1, e2);
    std::cerr << "note: normalized to (e1,e2)=(" << e1 << "," << e2
              << "); the proportions are symmetric in the two sides\n";
  }
}

bool require_prime_power(uint32_t q) {
  uint32_t p = 0, k = 0;
  return sk::prime_power_decompose(q, p, k);
}

int cmd_formulas(const std::vector<uint32_t>& e1s, const std::vector<uint32_t>& e2s,
                 const std::vector<uint32_t>& qs, const std::string& format,
                 const std::string& out) {
  std::vector<FormulaRow> rows;
  for (uint32_t a : e1s)
    for (uint32_t b : e2s)
      for (uint32_t q : qs) {
        uint32_t e1 = a, e2 = b;
        normalize_sides(e1, e2);
        rows.push_back(formula_row(e1, e2, q));
      }
  emit(render_formula_rows(rows, format), out);
  return kExitOk;
}

int cmd_table(const std::vector<uint32_t>& qs, uint32_t max_e, const std::string& format,
              const std::string& out) {
  if (qs.empty() || max_e < 1) {
    std::cerr << "error: empty parameter range\n";
    return kExitUsage;
  }
  std::vector<FormulaRow> rows;
  for (uint32_t q : qs)
    for (uint32_t e1 = 1; e1 <= max_e; ++e1)
      for (uint32_t e2 = 1; e2 <= e1; ++e2) rows.push_back(formula_row(e1, e2, q));
  if (format == "csv" || format == "json") {
    emit(render_formula_rows(rows, format), out);
    return kExitOk;
  }
  // Markdown table.
  std::ostringstream os;
  os << "| e1 | e2 | q | P | P (dec) | bounds | 1/xi | 1-P/xi | pair bound | comparison |\n";
  os << "|---:|---:|--:|---|---------|--------|------|--------|------------|------------|\n";
  for (const auto& r : rows) {
    std::string bounds = r.has_bounds ? (r.bounds_hold ? "PASS" : "FAIL") : "n/a";
    std::string psy = r.has_psy
                          ? sk::rational_string(r.psy) + (r.psy_vacuous ? " (vacuous)" : "")
                          : "n/a";
    os << "| " << r.e1 << " | " << r.e2 << " | " << r.q << " | " << sk::rational_string(r.p)
       << " | " << sk::decimal12(r.p) << " | " << bounds << " | "
       << sk::rational_string(r.one_over_xi) << " | "
       << sk::rational_string(r.one_minus_p_over_xi) << " | "
       << sk::rational_string(r.lemma_bound) << " | " << psy << " |\n";
  }
  emit(os.str(), out);
  return kExitOk;
}

int cmd_verify(uint32_t max_e, uint32_t max_q, double trial_scale, uint32_t workers,
               const std::string& inject_fault) {
  if (!inject_fault.empty()) sk::set_injected_fault(inject_fault);
  sk::VerifyOptions opt;
  opt.max_e = max_e;
  opt.max_q = max_q;
  opt.trial_scale = trial_scale;
  opt.workers = workers;
  auto results = sk::run_acceptance(opt);
  for (const auto& r : results) std::cout << sk::format_result_line(r) << "\n";
  return sk::all_pass(results) ? kExitOk : kExitVerificationFailure;
}

int cmd_census(uint32_t d, uint32_t q, uint32_t e1, uint32_t e2, const std::string& kind,
               bool full_spin, const std::string& format, const std::string& out) {
  if (!require_prime_power(q)) {
    std::cerr << "error: census needs a prime power q\n";
    return kExitUsage;
  }
  normalize_sides(e1, e2);
  const sk::Field f(q);
  sk::Caps caps = sk::Caps::defaults();
  caps.full_spin = full_spin;
  if (kind == "graph" || kind == "ab") {
    if (d != e1 + e2) {
      std::cerr << "error: walk censuses need d = e1 + e2\n";
      return kExitUsage;
    }
    sk::WalkCensus wc = kind == "graph" ? sk::graph_walk_census(f, e1, e2, caps)
                                        : sk::ab_walk_census(f, e1, e2, caps);
    emit(sk::to_json(wc), out);
    const sk::KneserParams kp(e1, e2, q);
    const bool ok = wc.walks3 == sk::walk3_count(kp) && wc.arcs3 == sk::arc3_count(kp) &&
                    wc.closed_walks3 == sk::closed_walk3_count(kp) &&
                    wc.closed_arcs3 == sk::closed_arc3_count(kp);
    if (!ok) std::cerr << "verification failure: census disagrees with the closed forms\n";
    return ok ? kExitOk : kExitVerificationFailure;
  }
  if (kind != "duo") {
    std::cerr << "error: --kind must be duo, graph, or ab\n";
    return kExitUsage;
  }
  sk::DuoCensus dc = sk::exhaustive_duo_census(f, d, e1, e2, caps);
  if (format == "csv") {
    std::ostringstream os;
    os << "d,q,e1,e2,status,pairs,non_duo,reducible_duo,irreducible_duo,spin_checked,"
          "spin_mismatches\n";
    os << dc.d << ',' << dc.q << ',' << dc.e1 << ',' << dc.e2 << ','
       << sk::csv_escape(dc.status == sk::DuoCensus::Status::ok
                             ? "ok"
                             : "skipped (no such stingray elements)")
       << ',' << dc.pairs << ',' << dc.non_duo << ',' << dc.reducible_duo << ','
       << dc.irreducible_duo << ',' << dc.spin_checked << ',' << dc.spin_mismatches << "\n";
    emit(os.str(), out);
  } else {
    emit(sk::to_json(dc), out);
  }
  if (dc.status == sk::DuoCensus::Status::skipped_empty_class) {
    std::cerr << "skipped (no such stingray elements)\n";
    return kExitOk;
  }
  auto problems = sk::duo_census_discrepancies(dc);
  for (const auto& p : problems) std::cerr << "verification failure: " << p << "\n";
  return problems.empty() ? kExitOk : kExitVerificationFailure;
}

int cmd_sample(const std::string& experiment, uint32_t e1, uint32_t e2, uint32_t q,
               uint64_t trials, uint64_t seed, uint32_t workers, const std::string& mode,
               const std::string& format, const std::string& out) {
  if (!require_prime_power(q)) {
    std::cerr << "error: sampling needs a prime power q\n";
    return kExitUsage;
  }
  normalize_sides(e1, e2);
  if (workers == 0) workers = sk::default_workers();
  sk::TrialReport r;
  if (experiment == "irreducible") {
    const auto m = mode == "class-pair" ? sk::SampleMode::fixed_class_pair
                                        : sk::SampleMode::uniform_group;
    r = sk::estimate_irreducible_proportion(e1, e2, q, trials, seed, m, workers);
  } else if (experiment == "duo-fraction") {
    r = sk::estimate_duo_fraction(e1, e2, q, trials, seed, workers);
  } else if (experiment == "reducible-pair") {
    r = sk::estimate_reducible_pair_fraction(e1, e2, q, trials, seed, workers);
  } else if (experiment == "stingray-rate") {
    r = sk::stingray_acceptance_rate(e1 + e2, e2, q, trials, seed, workers);
  } else if (experiment == "gl-rate") {
    r = sk::gl_acceptance_rate(e1 + e2, q, trials, seed, workers);
  } else {
    std::cerr << "error: unknown experiment " << experiment << "\n";
    return kExitUsage;
  }
  if (format == "csv")
    emit(sk::trial_csv_header() + "\n" + sk::to_csv_row(r) + "\n", out);
  else if (format == "json")
    emit(sk::to_json(r), out);
  else {
    std::ostringstream os;
    os << r.experiment << " (e1=" << r.params.e1 << ", e2=" << r.params.e2
       << ", q=" << r.params.q << ", mode="
       << (r.params.mode == sk::SampleMode::uniform_group ? "uniform-group" : "fixed-class-pair")
       << ")\n";
    if (r.status == sk::TrialReport::Status::skipped_empty_class) {
      os << "status: skipped (no such stingray elements)\n";
    } else {
      os << "trials:  " << r.trials << "\nhits:    " << r.hits << "\nestimate: " << r.estimate
         << " +/- " << r.stderr_est << "\ntarget:  " << sk::rational_string(r.exact_target)
         << " = " << sk::decimal12(r.exact_target) << "\nz:       " << r.z
         << "\nseed:    " << r.seed << "\nworkers: " << r.workers << "\n";
    }
    emit(os.str(), out);
  }
  if (r.status == sk::TrialReport::Status::skipped_empty_class) {
    std::cerr << "skipped (no such stingray elements)\n";
    return kExitOk;
  }
  return r.z_ok() ? kExitOk : kExitVerificationFailure;
}

int cmd_identity(uint32_t max_e, uint32_t max_q) {
  sk::VerifyOptions opt;
  opt.max_e = max_e;
  opt.max_q = max_q;
  uint64_t cases = 0, failures = 0;
  for (uint32_t e1 = 1; e1 <= max_e; ++e1)
    for (uint32_t e2 = 1; e2 <= e1; ++e2)
      for (uint32_t q = 2; q <= max_q; ++q) {
        ++cases;
        if (!(sk::q_identity_sum(e1, e2, q) == sk::BigRat(1))) {
          ++failures;
          std::cout << "FAIL q_identity_sum(" << e1 << "," << e2 << "," << q << ") != 1\n";
        }
      }
  for (uint32_t e1 = 1; e1 <= max_e; ++e1)
    for (uint32_t q = 2; q <= 21; ++q) {
      ++cases;
      if (!(sk::p_e1_1_closed_form(e1, q) == sk::proportion_P(sk::KneserParams(e1, 1, q)))) {
        ++failures;
        std::cout << "FAIL P(e1,1) closed form at (" << e1 << ",1," << q << ")\n";
      }
    }
  for (uint32_t q = 2; q <= 21; ++q) {
    ++cases;
    if (!(sk::p_22_closed_form(q) == sk::proportion_P(sk::KneserParams(2, 2, q)))) {
      ++failures;
      std::cout << "FAIL P(2,2) closed form at q=" << q << "\n";
    }
  }
  std::cout << (failures ? "FAIL: " : "PASS: ") << cases << " identity evaluations, " << failures
            << " failures\n";
  return failures ? kExitVerificationFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counts, censuses and Monte Carlo experiments for disjointness walks "
               "of subspaces and stingray duos over GL_d(q)"};
  app.require_subcommand(1);
  app.fallthrough();  // global --format/--out may follow the subcommand

  std::string format = "table", out_path;
  bool verify_flag = true;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--out", out_path, "write output to a file instead of stdout");
  app.add_flag("--verify-mode,!--no-verify-mode", verify_flag,
               "cross-assert closed forms against count ratios on every evaluation");

  // formulas
  auto* formulas = app.add_subcommand("formulas", "exact P, bounds, duo fraction per (e1,e2,q)");
  std::vector<uint32_t> f_e1{2}, f_e2{2}, f_q;
  uint32_t f_single_q = 0;
  formulas->add_option("--e1", f_e1, "left side dimension(s)");
  formulas->add_option("--e2", f_e2, "right side dimension(s)");
  formulas->add_option("--q", f_single_q, "field size");
  formulas->add_option("--qs", f_q, "field sizes (list)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the full verification battery");
  uint32_t v_max_e = 8, v_max_q = 16, v_workers = 0;
  double v_scale = 1.0;
  std::string v_fault;
  verify->add_option("--max-e", v_max_e, "largest e1 in the grids");
  verify->add_option("--max-q", v_max_q, "largest q in the grids");
  verify->add_option("--trial-scale", v_scale, "scale factor for Monte Carlo trial counts");
  verify->add_option("--workers", v_workers, "worker threads (0 = hardware)");
  verify->add_option("--inject-fault", v_fault, "test fixture: name of a formula to corrupt")
      ->group("");  // hidden

  // census
  auto* census = app.add_subcommand("census", "exhaustive enumeration oracles");
  uint32_t c_d = 4, c_q = 2, c_e1 = 2, c_e2 = 2;
  std::string c_kind = "duo";
  bool c_full_spin = false;
  census->add_option("--d", c_d, "matrix degree");
  census->add_option("--q", c_q, "field size (prime power)")->required();
  census->add_option("--e1", c_e1, "left stingray dimension")->required();
  census->add_option("--e2", c_e2, "right stingray dimension")->required();
  census->add_option("--kind", c_kind, "duo | graph | ab")
      ->check(CLI::IsMember({"duo", "graph", "ab"}));
  census->add_flag("--full-spin", c_full_spin, "spin-verify every pair, not a 1-in-97 subsample");

  // sample
  auto* sample = app.add_subcommand("sample", "seeded Monte Carlo experiments");
  uint32_t s_e1 = 2, s_e2 = 2, s_q = 2, s_workers = 0;
  uint64_t s_trials = 100000, s_seed = 1;
  std::string s_mode = "uniform", s_experiment = "irreducible";
  sample->add_option("--e1", s_e1)->required();
  sample->add_option("--e2", s_e2)->required();
  sample->add_option("--q", s_q)->required();
  sample->add_option("--trials", s_trials);
  sample->add_option("--seed", s_seed);
  sample->add_option("--workers", s_workers, "worker threads (0 = hardware)");
  sample->add_option("--mode", s_mode, "uniform | class-pair")
      ->check(CLI::IsMember({"uniform", "class-pair"}));
  sample->add_option("--experiment", s_experiment,
                     "irreducible | duo-fraction | reducible-pair | stingray-rate | gl-rate")
      ->check(CLI::IsMember(
          {"irreducible", "duo-fraction", "reducible-pair", "stingray-rate", "gl-rate"}));

  // table
  auto* table = app.add_subcommand("table", "bound tables across a (e1,e2,q) grid");
  std::vector<uint32_t> t_qs{2, 3, 4, 5};
  uint32_t t_max_e = 6;
  table->add_option("--qs", t_qs, "field sizes");
  table->add_option("--max-e", t_max_e, "largest e1");

  // identity
  auto* identity = app.add_subcommand("identity", "q-identity and closed-form witnesses");
  uint32_t i_max_e = 8, i_max_q = 16;
  identity->add_option("--max-e", i_max_e);
  identity->add_option("--max-q", i_max_q);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitOk;
    }
    app.exit(e);
    return kExitUsage;
  }

  sk::set_verify_mode(verify_flag);

  try {
    if (*formulas) {
      std::vector<uint32_t> qs = f_q;
      if (f_single_q) qs.push_back(f_single_q);
      if (qs.empty()) qs.push_back(2);
      for (uint32_t q : qs)
        if (q < 2) {
          std::cerr << "error: q must be >= 2\n";
          return kExitUsage;
        }
      return cmd_formulas(f_e1, f_e2, qs, format, out_path);
    }
    if (*verify) return cmd_verify(v_max_e, v_max_q, v_scale, v_workers, v_fault);
    if (*census) return cmd_census(c_d, c_q, c_e1, c_e2, c_kind, c_full_spin, format, out_path);
    if (*sample)
      return cmd_sample(s_experiment, s_e1, s_e2, s_q, s_trials, s_seed, s_workers, s_mode,
                        format, out_path);
    if (*table) return cmd_table(t_qs, t_max_e, format, out_path);
    if (*identity) return cmd_identity(i_max_e, i_max_q);
  } catch (const sk::EmptyClass& e) {
    std::cerr << "skipped (no such stingray elements): " << e.what() << "\n";
    return kExitOk;
  } catch (const sk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
