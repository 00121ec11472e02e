// Command-line front end: one binary, one subcommand per operation.
//
// Exit status: 0 success, 1 invalid input, 2 gamma cannot be certified,
// 3 search budget exhausted with an interval wider than eps (the interval
// is still printed and valid).

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfa/bisim.hpp"
#include "wfa/core.hpp"
#include "wfa/io.hpp"
#include "wfa/jsr.hpp"
#include "wfa/learn.hpp"
#include "wfa/metric.hpp"
#include "wfa/parallel.hpp"
#include "wfa/rng.hpp"
#include "wfa/umdp.hpp"

namespace {

using wfa::io::num;

constexpr int kExitValidation = 1;
constexpr int kExitCannotCertify = 2;
constexpr int kExitBudget = 3;

struct Config {
  int threads = 0;
  std::uint64_t seed = wfa::kDefaultSeed;

  std::string input, input2, output, vector_path, prefixes_path, suffixes_path, actions;
  std::vector<std::string> words;
  std::vector<double> scales;
  double gamma = 0.0;
  double eps = 1e-6;
  double tol = wfa::kDefaultRankTol;
  int depth = 8;
  int jsr_depth = 8;
  std::size_t budget = 1000000;
  std::size_t jsr_budget = wfa::kDefaultJsrBudget;
  int rank = 0;
  int horizon = 1;
  int max_len = -1;
  int trials = 1;
};

std::string word_text(const wfa::Alphabet& a, const wfa::Word& w) { return w.empty() ? "ε" : a.format(w); }

void print_interval(std::ostream& os, const wfa::CertifiedInterval& iv, const wfa::Alphabet& alphabet) {
  os << "lower " << num(iv.lower) << "\n"
     << "upper " << num(iv.upper) << "\n"
     << "width " << num(iv.width()) << "\n"
     << "gamma " << num(iv.gamma) << "\n"
     << "witness " << word_text(alphabet, iv.witness_prefix) << "\n"
     << "depth_explored " << iv.depth_explored << "\n"
     << "nodes_expanded " << iv.nodes_expanded << "\n"
     << "exhausted " << (iv.exhausted ? "true" : "false") << "\n";
}

int interval_status(const wfa::CertifiedInterval& iv, double eps) {
  return iv.exhausted && iv.width() > eps ? kExitBudget : 0;
}

wfa::SearchOptions search_options(const Config& c) {
  wfa::SearchOptions o;
  o.eps = c.eps;
  o.budget = c.budget;
  o.jsr_depth = c.jsr_depth;
  return o;
}

std::string csv_preamble(const Config& c, const std::string& header) {
  return "# seed=" + std::to_string(c.seed) + "\n" + header + "\n";
}

std::vector<wfa::Word> word_set(const Config& c, const wfa::Alphabet& a, const std::string& path) {
  if (!path.empty()) return wfa::io::read_word_list(path, a);
  return wfa::all_words(a, static_cast<std::size_t>(c.max_len));
}

int cmd_eval(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  std::ostringstream os;
  for (const auto& w : c.words) os << (w.empty() ? "ε" : w) << "\t" << num(wfa::evaluate(a, w)) << "\n";
  wfa::io::write_output(c.output, os.str());
  return 0;
}

int cmd_reverse(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  wfa::io::write_output(c.output, wfa::io::dump(wfa::io::to_json(wfa::reverse(a))));
  return 0;
}

int cmd_diff(const Config& c) {
  const wfa::Wfa a1 = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  const wfa::Wfa a2 = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input2));
  wfa::io::write_output(c.output, wfa::io::dump(wfa::io::to_json(wfa::difference(a1, a2))));
  return 0;
}

int cmd_minimize(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  wfa::io::write_output(c.output, wfa::io::dump(wfa::io::to_json(wfa::minimize(a, c.tol))));
  return 0;
}

int cmd_bisim(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  const wfa::Subspace w = wfa::largest_bisimulation(a, c.tol);
  wfa::io::Json j;
  j["dim"] = a.dim();
  j["k"] = w.dim();
  j["tol"] = c.tol;
  wfa::io::Json rows = wfa::io::Json::array();
  for (Eigen::Index i = 0; i < w.basis.rows(); ++i) {
    wfa::io::Json r = wfa::io::Json::array();
    for (Eigen::Index k = 0; k < w.basis.cols(); ++k) r.push_back(w.basis(i, k));
    rows.push_back(std::move(r));
  }
  j["basis"] = std::move(rows);
  wfa::io::write_output(c.output, wfa::io::dump(j));
  return 0;
}

int cmd_jsr(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  const wfa::JsrBounds b = wfa::wfa_spectral_radius(a, c.depth, c.jsr_budget);
  std::ostringstream os;
  os << "lower " << num(b.lower) << "\n"
     << "upper " << num(b.upper) << "\n"
     << "depth " << b.depth << "\n"
     << "witness " << word_text(a.alphabet(), b.witness) << "\n"
     << "complete " << (b.complete ? "true" : "false") << "\n";
  wfa::io::write_output(c.output, os.str());
  return 0;
}

int cmd_irreducible(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  std::ostringstream os;
  os << "irreducible " << (wfa::wfa_irreducible(a, c.tol) ? "true" : "false") << "\n"
     << "algebra_dim " << wfa::algebra_dimension(a.transitions(), c.tol) << "\n"
     << "full_dim " << a.dim() * a.dim() << "\n";
  wfa::io::write_output(c.output, os.str());
  return 0;
}

int cmd_distance(const Config& c) {
  const wfa::Wfa a1 = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  const wfa::Wfa a2 = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input2));
  const wfa::CertifiedInterval iv = wfa::distance(a1, a2, c.gamma, search_options(c));
  std::ostringstream os;
  print_interval(os, iv, a1.alphabet());
  wfa::io::write_output(c.output, os.str());
  return interval_status(iv, c.eps);
}

int cmd_seminorm(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  const wfa::Vector v = c.vector_path.empty() ? a.alpha()
                                              : wfa::io::vector_from_json(wfa::io::read_json_file(c.vector_path), a.dim());
  const wfa::CertifiedInterval iv = wfa::seminorm_interval(a, v, c.gamma, search_options(c));
  std::ostringstream os;
  print_interval(os, iv, a.alphabet());
  wfa::io::write_output(c.output, os.str());
  return interval_status(iv, c.eps);
}

int cmd_bound(const Config& c) {
  const wfa::Wfa a1 = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  const wfa::Wfa a2 = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input2));
  const wfa::TailBoundParams p = wfa::compute_joint_tail_params(a1, a2, c.gamma);
  const double bound = wfa::distance_upper_bound(a1, a2, c.gamma, p);
  std::ostringstream os;
  os << "bound " << num(bound) << "\n"
     << "theta " << num(p.theta) << "\n"
     << "nu " << num(p.nu()) << "\n"
     << "block_const " << num(p.block_const) << "\n"
     << "norm " << p.method << "\n";
  wfa::io::write_output(c.output, os.str());
  return 0;
}

int cmd_hankel(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  if (c.max_len < 0 && (c.prefixes_path.empty() || c.suffixes_path.empty()))
    throw wfa::ValidationError("give --prefixes and --suffixes, or --max-len");
  const auto p = word_set(c, a.alphabet(), c.prefixes_path);
  const auto s = word_set(c, a.alphabet(), c.suffixes_path);
  wfa::io::write_output(c.output, wfa::io::dump(wfa::io::to_json(wfa::hankel_from_wfa(a, p, s))));
  return 0;
}

int cmd_learn(const Config& c) {
  const wfa::HankelBlock b = wfa::io::block_from_json(wfa::io::read_json_file(c.input));
  const wfa::LearnResult r = wfa::spectral_learn(b, c.rank, c.tol);
  if (r.rank_warning)
    std::cerr << "warning: rank " << c.rank << " exceeds the numerical rank of H at tol " << num(c.tol) << "\n";
  wfa::io::write_output(c.output, wfa::io::dump(wfa::io::to_json(r.automaton)));
  return 0;
}

int cmd_experiment_learn(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  Config cc = c;
  if (cc.max_len < 0) cc.max_len = static_cast<int>(a.dim());
  const auto p = word_set(cc, a.alphabet(), c.prefixes_path);
  const auto s = word_set(cc, a.alphabet(), c.suffixes_path);
  const auto rows = wfa::perturbation_experiment(a, p, s, c.scales, c.gamma, c.eps, c.trials, c.seed, search_options(c));
  std::string out = csv_preamble(c, "scale,trial,hankel_err,d_lower,d_upper,ratio");
  for (const auto& r : rows) {
    if (r.skipped) {
      out += "# skipped scale=" + num(r.scale) + " trial=" + std::to_string(r.trial) + ": " + r.reason + "\n";
      continue;
    }
    out += num(r.scale) + "," + std::to_string(r.trial) + "," + num(r.hankel_err) + "," + num(r.d_lower) + "," + num(r.d_upper) + "," +
           num(r.ratio) + "\n";
  }
  wfa::io::write_output(c.output, out);
  return 0;
}

int cmd_experiment_continuity(const Config& c) {
  const wfa::Wfa a = wfa::io::wfa_from_json(wfa::io::read_json_file(c.input));
  const auto rows = wfa::parameter_continuity_experiment(a, c.scales, c.gamma, c.eps, c.seed, search_options(c));
  std::string out = csv_preamble(c, "scale,lower,upper,closed_form_bound");
  for (const auto& r : rows)
    out += num(r.scale) + "," + num(r.lower) + "," + num(r.upper) + "," + num(r.closed_form_bound) + "\n";
  wfa::io::write_output(c.output, out);
  return 0;
}

int cmd_umdp_value(const Config& c) {
  const wfa::Umdp u = wfa::io::umdp_from_json(wfa::io::read_json_file(c.input));
  const wfa::Word x = u.actions().parse(c.actions);
  wfa::io::write_output(c.output, "value " + num(wfa::umdp_value_truncated(u, x, c.horizon)) + "\n");
  return 0;
}

int cmd_umdp_sup(const Config& c) {
  const wfa::Umdp u = wfa::io::umdp_from_json(wfa::io::read_json_file(c.input));
  const wfa::CertifiedInterval iv = wfa::umdp_sup_value_interval(u, search_options(c));
  std::ostringstream os;
  print_interval(os, iv, u.actions());
  wfa::io::write_output(c.output, os.str());
  return interval_status(iv, c.eps);
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Weighted finite automata: bisimulation, joint spectral radius, certified distances, spectral learning"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--threads", c.threads, "Worker threads; 1 selects the serial kernels (default: OpenMP runtime)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Root seed for experiments");

  auto out_opt = [&](CLI::App* s) { s->add_option("-o,--output", c.output, "Output file (default: stdout)"); };
  auto tol_opt = [&](CLI::App* s) { s->add_option("--tol", c.tol, "Relative rank tolerance")->check(CLI::PositiveNumber); };
  auto search_opts = [&](CLI::App* s, bool need_gamma) {
    auto g = s->add_option("--gamma", c.gamma, "Discount factor")->check(CLI::PositiveNumber);
    if (need_gamma) g->required();
    s->add_option("--eps", c.eps, "Target interval width")->check(CLI::PositiveNumber);
    s->add_option("--budget", c.budget, "Maximum node expansions");
    s->add_option("--jsr-depth", c.jsr_depth, "Product length for the admissibility check")->check(CLI::PositiveNumber);
  };
  std::vector<std::pair<CLI::App*, int (*)(const Config&)>> handlers;

  auto* eval = app.add_subcommand("eval", "Evaluate f_A on words");
  eval->add_option("wfa", c.input)->required();
  eval->add_option("words", c.words, "Words (\"\" or ε for the empty word)")->required();
  out_opt(eval);
  handlers.push_back({eval, cmd_eval});

  auto* rev = app.add_subcommand("reverse", "Reverse automaton");
  rev->add_option("wfa", c.input)->required();
  out_opt(rev);
  handlers.push_back({rev, cmd_reverse});

  auto* diff = app.add_subcommand("diff", "Difference automaton computing f1 - f2");
  diff->add_option("a1", c.input)->required();
  diff->add_option("a2", c.input2)->required();
  out_opt(diff);
  handlers.push_back({diff, cmd_diff});

  auto* mini = app.add_subcommand("minimize", "Minimal equivalent automaton");
  mini->add_option("wfa", c.input)->required();
  tol_opt(mini);
  out_opt(mini);
  handlers.push_back({mini, cmd_minimize});

  auto* bis = app.add_subcommand("bisim", "Largest linear bisimulation (dimension and orthonormal basis)");
  bis->add_option("wfa", c.input)->required();
  tol_opt(bis);
  out_opt(bis);
  handlers.push_back({bis, cmd_bisim});

  auto* jsr = app.add_subcommand("jsr", "Joint spectral radius bounds of the transitions");
  jsr->add_option("wfa", c.input)->required();
  jsr->add_option("--depth", c.depth, "Maximum product length")->check(CLI::PositiveNumber);
  jsr->add_option("--budget", c.jsr_budget, "Products kept per level");
  out_opt(jsr);
  handlers.push_back({jsr, cmd_jsr});

  auto* irr = app.add_subcommand("irreducible", "Irreducibility test via the generated algebra");
  irr->add_option("wfa", c.input)->required();
  irr->add_option("--tol", c.tol, "Absolute tolerance on normalized residuals")->check(CLI::PositiveNumber);
  out_opt(irr);
  handlers.push_back({irr, cmd_irreducible});

  auto* dist = app.add_subcommand("distance", "Certified interval for the bisimulation distance");
  dist->add_option("a1", c.input)->required();
  dist->add_option("a2", c.input2)->required();
  search_opts(dist, true);
  out_opt(dist);
  handlers.push_back({dist, cmd_distance});

  auto* semi = app.add_subcommand("seminorm", "Certified interval for the bisimulation seminorm of a vector");
  semi->add_option("wfa", c.input)->required();
  semi->add_option("--vector", c.vector_path, "JSON vector (default: alpha)");
  search_opts(semi, true);
  out_opt(semi);
  handlers.push_back({semi, cmd_seminorm});

  auto* bound = app.add_subcommand("bound", "Closed-form perturbation upper bound on the distance");
  bound->add_option("a1", c.input)->required();
  bound->add_option("a2", c.input2)->required();
  bound->add_option("--gamma", c.gamma, "Discount factor")->required()->check(CLI::PositiveNumber);
  out_opt(bound);
  handlers.push_back({bound, cmd_bound});

  auto* hank = app.add_subcommand("hankel", "Exact Hankel block of an automaton");
  hank->add_option("wfa", c.input)->required();
  hank->add_option("--prefixes", c.prefixes_path, "Prefix list, one word per line");
  hank->add_option("--suffixes", c.suffixes_path, "Suffix list, one word per line");
  hank->add_option("--max-len", c.max_len, "Use all words up to this length for missing lists");
  out_opt(hank);
  handlers.push_back({hank, cmd_hankel});

  auto* learn = app.add_subcommand("learn", "Spectral learning from a Hankel block");
  learn->add_option("block", c.input)->required();
  learn->add_option("--rank", c.rank, "Number of states")->required()->check(CLI::PositiveNumber);
  tol_opt(learn);
  out_opt(learn);
  handlers.push_back({learn, cmd_learn});

  auto* exp = app.add_subcommand("experiment", "Experiment runners (CSV output)");
  exp->require_subcommand(1);
  auto* exl = exp->add_subcommand("learn", "Learning error under Hankel perturbations");
  exl->add_option("wfa", c.input)->required();
  exl->add_option("--scales", c.scales, "Noise spectral norms")->required()->delimiter(',');
  exl->add_option("--trials", c.trials, "Trials per scale")->check(CLI::PositiveNumber);
  exl->add_option("--prefixes", c.prefixes_path, "Prefix list (default: all words up to --max-len)");
  exl->add_option("--suffixes", c.suffixes_path, "Suffix list (default: all words up to --max-len)");
  exl->add_option("--max-len", c.max_len, "Word length for default bases (default: dim)");
  search_opts(exl, true);
  out_opt(exl);
  handlers.push_back({exl, cmd_experiment_learn});
  auto* exc = exp->add_subcommand("continuity", "Distance under parameter perturbations");
  exc->add_option("wfa", c.input)->required();
  exc->add_option("--scales", c.scales, "Perturbation norms")->required()->delimiter(',');
  search_opts(exc, true);
  out_opt(exc);
  handlers.push_back({exc, cmd_experiment_continuity});

  auto* umdp = app.add_subcommand("umdp", "Unobservable MDPs");
  umdp->require_subcommand(1);
  auto* uv = umdp->add_subcommand("value", "Truncated discounted value of an action string");
  uv->add_option("umdp", c.input)->required();
  uv->add_option("--actions", c.actions, "Action string")->required();
  uv->add_option("--horizon", c.horizon, "Number of reward terms")->required()->check(CLI::PositiveNumber);
  out_opt(uv);
  handlers.push_back({uv, cmd_umdp_value});
  auto* us = umdp->add_subcommand("sup", "Certified interval for the supremum value");
  us->add_option("umdp", c.input)->required();
  search_opts(us, false);
  out_opt(us);
  handlers.push_back({us, cmd_umdp_sup});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (c.threads > 0) wfa::parallel::set_threads(c.threads);
  try {
    for (auto& [sub, fn] : handlers)
      if (sub->parsed()) return fn(c);
  } catch (const wfa::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const wfa::CannotCertify& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCannotCertify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
