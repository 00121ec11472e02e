#include "wfa/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "wfa/bisim.hpp"
#include "wfa/jsr.hpp"
#include "wfa/kernels.hpp"

namespace wfa {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be a positive finite number");
}

void check_admissible(const Wfa& a, double gamma, int depth) {
  const double bound = admissible_gamma_bound(a, depth);
  if (!(gamma < bound))
    throw CannotCertify("cannot certify gamma = " + fmt(gamma) + ": joint spectral radius upper bound at depth " +
                        std::to_string(depth) + " only admits gamma < " + fmt(bound));
}

[[noreturn]] void no_norm_found(double gamma) {
  throw CannotCertify("cannot certify gamma = " + fmt(gamma) +
                      ": no working norm with gamma * theta < 1 was found; try a larger depth or block length");
}

// Rough number of tree levels needed before the root's tail bound drops
// below eps; used to rank candidate norms for a concrete search.
double estimated_levels(const TailBoundParams& p, const Vector& beta, const Vector& v, double eps) {
  const double nu = p.nu();
  const double root = p.block_const * p.dual_norm(beta) * p.vec_norm(v) * nu / (1.0 - nu);
  if (!(root > eps) || nu <= 0.0) return 0.0;
  return std::log(eps / root) / std::log(nu);
}

const TailBoundParams& pick_tightest(const std::vector<TailBoundParams>& cands, const Vector& beta, const Vector& v,
                                     double eps) {
  std::size_t best = 0;
  double best_levels = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double l = estimated_levels(cands[i], beta, v, eps);
    if (l < best_levels) {
      best_levels = l;
      best = i;
    }
  }
  return cands[best];
}

struct ArenaEntry {
  std::int64_t parent;
  Symbol symbol;
};

Word word_of(const std::vector<ArenaEntry>& arena, std::int64_t id) {
  Word w;
  for (; id > 0; id = arena[id].parent) w.push_back(arena[id].symbol);
  std::reverse(w.begin(), w.end());
  return w;
}

// Shorter first, then lexicographic.
bool word_before(const std::vector<ArenaEntry>& arena, std::int64_t x, int dx, std::int64_t y, int dy) {
  if (dx != dy) return dx < dy;
  return word_of(arena, x) < word_of(arena, y);
}

CertifiedInterval branch_and_bound(const Wfa& a, const Vector& v, double gamma, const TailBoundParams& params,
                                   const SearchOptions& opt) {
  using kernels::SearchNode;
  const std::size_t k = a.alphabet().size();
  const double nu = params.nu();

  kernels::TailModel tm;
  tm.scaling = params.scaling;
  tm.norm = params.norm;
  tm.factor = params.block_const * params.dual_norm(a.beta()) * nu / (1.0 - nu);

  std::vector<ArenaEntry> arena{{-1, 0}};

  SearchNode root;
  root.u = v;
  root.acc = std::abs(a.beta().dot(v));
  root.disc = 1.0;
  root.tail = tm.factor * kernels::detail::working_norm(tm, v);
  root.ub = root.acc + root.tail;
  root.depth = 0;
  root.word = 0;

  CertifiedInterval out;
  out.gamma = gamma;
  double lower = root.acc;
  std::int64_t witness = 0;
  int witness_depth = 0;

  auto heap_less = [&arena](const SearchNode& x, const SearchNode& y) {
    // True when x has lower priority than y.
    if (x.ub != y.ub) return x.ub < y.ub;
    if (x.depth != y.depth) return x.depth > y.depth;
    return word_before(arena, y.word, y.depth, x.word, x.depth);
  };
  std::priority_queue<SearchNode, std::vector<SearchNode>, decltype(heap_less)> heap(heap_less);
  if (root.tail > 0.0) heap.push(root);

  double upper = lower;
  std::vector<SearchNode> parents;
  std::vector<SearchNode> children;
  for (;;) {
    // The top has the largest ub; once it is dominated, every node is.
    if (!heap.empty() && heap.top().ub <= lower)
      while (!heap.empty()) heap.pop();
    upper = heap.empty() ? lower : std::max(lower, heap.top().ub);
    if (upper - lower <= opt.eps) break;
    if (out.nodes_expanded >= opt.budget) {
      out.exhausted = true;
      break;
    }

    const std::size_t take = std::min(opt.batch, opt.budget - out.nodes_expanded);
    parents.clear();
    while (parents.size() < take && !heap.empty() && heap.top().ub > lower) {
      parents.push_back(heap.top());
      heap.pop();
    }
    kernels::expand_nodes(a, gamma, tm, parents, children);
    out.nodes_expanded += parents.size();

    for (std::size_t i = 0; i < parents.size(); ++i) {
      for (std::size_t s = 0; s < k; ++s) {
        SearchNode& c = children[i * k + s];
        c.word = static_cast<std::int64_t>(arena.size());
        arena.push_back({parents[i].word, static_cast<Symbol>(s)});
        out.depth_explored = std::max(out.depth_explored, c.depth);
        if (c.acc > lower || (c.acc == lower && word_before(arena, c.word, c.depth, witness, witness_depth))) {
          lower = c.acc;
          witness = c.word;
          witness_depth = c.depth;
        }
        if (c.tail > 0.0 && c.ub > lower) heap.push(std::move(c));
      }
    }
  }

  out.lower = lower;
  out.upper = std::max(upper, lower);
  out.witness_prefix = word_of(arena, witness);
  return out;
}

bool canonical_less(const Wfa& x, const Wfa& y) {
  if (x.dim() != y.dim()) return x.dim() < y.dim();
  auto cmp = [](const auto& p, const auto& q) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (p.data()[i] < q.data()[i]) return -1;
      if (p.data()[i] > q.data()[i]) return 1;
    }
    return 0;
  };
  if (int c = cmp(x.alpha(), y.alpha())) return c < 0;
  if (int c = cmp(x.beta(), y.beta())) return c < 0;
  for (std::size_t s = 0; s < x.transitions().size() && s < y.transitions().size(); ++s)
    if (int c = cmp(x.transitions()[s], y.transitions()[s])) return c < 0;
  return false;
}

}  // namespace

double admissible_gamma_bound(const Wfa& a, int depth) {
  const JsrBounds b = wfa_spectral_radius(a, depth);
  return b.upper > 0.0 ? 1.0 / b.upper : std::numeric_limits<double>::infinity();
}

TailBoundParams compute_tail_params(const Wfa& a, double gamma, int depth, const TailOptions& opt) {
  check_gamma(gamma);
  check_admissible(a, gamma, depth);
  auto cands = certified_tail_candidates(a.transitions(), {a.beta()}, gamma, opt);
  if (cands.empty()) no_norm_found(gamma);
  return std::move(cands.front());
}

TailBoundParams compute_joint_tail_params(const Wfa& a1, const Wfa& a2, double gamma, const TailOptions& opt) {
  check_gamma(gamma);
  if (!(a1.alphabet() == a2.alphabet())) throw ValidationError("automata have different alphabets");
  if (a1.dim() != a2.dim()) throw ValidationError("automata must have the same dimension");
  std::vector<Matrix> gens = a1.transitions();
  gens.insert(gens.end(), a2.transitions().begin(), a2.transitions().end());
  auto cands = certified_tail_candidates(gens, {a1.beta(), a2.beta()}, gamma, opt);
  if (cands.empty()) no_norm_found(gamma);
  return std::move(cands.front());
}

CertifiedInterval seminorm_interval(const Wfa& a, const Vector& v, double gamma, const SearchOptions& opt) {
  check_gamma(gamma);
  if (!(opt.eps > 0.0)) throw ValidationError("eps must be positive");
  if (v.size() != a.dim())
    throw ValidationError("vector has length " + std::to_string(v.size()) + ", expected " + std::to_string(a.dim()));
  CertifiedInterval zero;
  zero.gamma = gamma;
  if (v.isZero(0.0)) return zero;
  check_admissible(a, gamma, opt.jsr_depth);

  if (opt.quotient) {
    // s(v) only depends on v modulo the largest bisimulation, so the search
    // can run on the (smaller, observable) quotient.
    const Subspace w = largest_bisimulation(a);
    if (w.dim() > 0) {
      const Quotient q = quotient(a, w);
      const Vector vq = q.complement.transpose() * v;
      // What is left of v after projecting out W at rounding level is noise.
      const double noise = 16.0 * static_cast<double>(a.dim()) * std::numeric_limits<double>::epsilon() * v.norm();
      if (vq.size() == 0 || vq.norm() <= noise) return zero;
      auto cands = certified_tail_candidates(q.automaton.transitions(), {q.automaton.beta()}, gamma, opt.tail);
      if (!cands.empty())
        return branch_and_bound(q.automaton, vq, gamma, pick_tightest(cands, q.automaton.beta(), vq, opt.eps), opt);
    }
  }
  auto cands = certified_tail_candidates(a.transitions(), {a.beta()}, gamma, opt.tail);
  if (cands.empty()) no_norm_found(gamma);
  return branch_and_bound(a, v, gamma, pick_tightest(cands, a.beta(), v, opt.eps), opt);
}

CertifiedInterval distance(const Wfa& a1, const Wfa& a2, double gamma, const SearchOptions& opt) {
  const bool swap = canonical_less(a2, a1);
  const Wfa d = swap ? difference(a2, a1) : difference(a1, a2);
  return seminorm_interval(d, d.alpha(), gamma, opt);
}

double distance_upper_bound(const Wfa& a1, const Wfa& a2, double gamma, const TailBoundParams& params) {
  check_gamma(gamma);
  if (!(a1.alphabet() == a2.alphabet())) throw ValidationError("automata have different alphabets");
  if (a1.dim() != a2.dim()) throw ValidationError("automata must have the same dimension");
  if (params.scaling.rows() != a1.dim()) throw ValidationError("tail parameters have the wrong dimension");
  const double nu = gamma * params.theta;
  if (!(nu < 1.0)) throw CannotCertify("gamma * theta = " + fmt(nu) + " is not below 1");

  const double c = params.block_const;
  const double one_step = c * params.theta * (1.0 + 1e-9);
  double et = 0.0;
  for (std::size_t s = 0; s < a1.transitions().size(); ++s) {
    const double n1 = params.op_norm(a1.transitions()[s]);
    const double n2 = params.op_norm(a2.transitions()[s]);
    if (n1 > one_step || n2 > one_step)
      throw ValidationError("tail parameters do not bound the transitions of both automata");
    et = std::max(et, params.op_norm(a1.transitions()[s] - a2.transitions()[s]));
  }
  const double na = params.vec_norm(a1.alpha());
  const double ea = params.vec_norm(a1.alpha() - a2.alpha());
  const double nb = params.dual_norm(a2.beta());
  const double eb = params.dual_norm(a1.beta() - a2.beta());
  return c * (na * eb + nb * ea) / (1.0 - nu) + c * c * gamma * na * nb * et / ((1.0 - nu) * (1.0 - nu));
}

double truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth) {
  if (v.size() != a.dim()) throw ValidationError("vector length does not match automaton dimension");
  if (depth < 0) throw ValidationError("depth must be non-negative");
  return kernels::truncated_seminorm(a, v, gamma, depth).value;
}

}  // namespace wfa
