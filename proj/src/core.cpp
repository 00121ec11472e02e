#include "wfa/core.hpp"

#include <algorithm>
#include <iterator>

namespace wfa {

Wfa::Wfa(Alphabet alphabet, Vector alpha, Vector beta, std::vector<Matrix> trans)
    : alphabet_(std::move(alphabet)), alpha_(std::move(alpha)), beta_(std::move(beta)), trans_(std::move(trans)) {
  if (alphabet_.empty()) throw ValidationError("alphabet must not be empty");
  const auto n = alpha_.size();
  if (beta_.size() != n)
    throw ValidationError("beta has length " + std::to_string(beta_.size()) + ", expected " + std::to_string(n));
  if (trans_.size() != alphabet_.size())
    throw ValidationError("expected one transition matrix per symbol (" + std::to_string(alphabet_.size()) +
                          "), got " + std::to_string(trans_.size()));
  for (std::size_t s = 0; s < trans_.size(); ++s) {
    if (trans_[s].rows() != n || trans_[s].cols() != n)
      throw ValidationError("transition '" + alphabet_[static_cast<Symbol>(s)] + "' is " +
                            std::to_string(trans_[s].rows()) + "x" + std::to_string(trans_[s].cols()) +
                            ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

Vector run(const Wfa& a, const Vector& v, std::span<const Symbol> x) {
  if (v.size() != a.dim()) throw ValidationError("state vector length does not match automaton dimension");
  Vector u = v;
  for (Symbol s : x) {
    if (s >= a.alphabet().size()) throw ValidationError("symbol index out of range");
    u = a.trans(s) * u;
  }
  return u;
}

double evaluate(const Wfa& a, std::span<const Symbol> x) { return a.beta().dot(run(a, a.alpha(), x)); }

double evaluate(const Wfa& a, std::string_view x) { return evaluate(a, a.alphabet().parse(x)); }

Wfa reverse(const Wfa& a) {
  std::vector<Matrix> t;
  t.reserve(a.transitions().size());
  for (const auto& m : a.transitions()) t.emplace_back(m.transpose());
  return Wfa(a.alphabet(), a.beta(), a.alpha(), std::move(t));
}

Wfa difference(const Wfa& a1, const Wfa& a2) {
  if (!(a1.alphabet() == a2.alphabet())) {
    const auto& s1 = a1.alphabet().symbols();
    const auto& s2 = a2.alphabet().symbols();
    std::vector<std::string> sym;
    std::set_symmetric_difference(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(sym));
    std::string msg = "alphabet mismatch; symbols not shared:";
    for (const auto& s : sym) msg += " '" + s + "'";
    throw ValidationError(msg);
  }
  const auto n1 = a1.dim();
  const auto n2 = a2.dim();
  Vector alpha(n1 + n2);
  alpha << a1.alpha(), -a2.alpha();
  Vector beta(n1 + n2);
  beta << a1.beta(), a2.beta();
  std::vector<Matrix> t;
  for (std::size_t s = 0; s < a1.transitions().size(); ++s) {
    Matrix m = Matrix::Zero(n1 + n2, n1 + n2);
    m.topLeftCorner(n1, n1) = a1.trans(static_cast<Symbol>(s));
    m.bottomRightCorner(n2, n2) = a2.trans(static_cast<Symbol>(s));
    t.push_back(std::move(m));
  }
  return Wfa(a1.alphabet(), std::move(alpha), std::move(beta), std::move(t));
}

Wfa with_initial(const Wfa& a, const Vector& v) {
  if (v.size() != a.dim())
    throw ValidationError("initial vector has length " + std::to_string(v.size()) + ", expected " +
                          std::to_string(a.dim()));
  return Wfa(a.alphabet(), v, a.beta(), a.transitions());
}

Wfa with_final(const Wfa& a, const Vector& w) {
  if (w.size() != a.dim())
    throw ValidationError("final vector has length " + std::to_string(w.size()) + ", expected " +
                          std::to_string(a.dim()));
  return Wfa(a.alphabet(), a.alpha(), w, a.transitions());
}

Wfa conjugate(const Wfa& a, const Matrix& t) {
  if (t.rows() != a.dim() || t.cols() != a.dim()) throw ValidationError("change of basis must be dim x dim");
  Eigen::PartialPivLU<Matrix> lu(t);
  const Matrix t_inv = lu.inverse();
  std::vector<Matrix> tr;
  for (const auto& m : a.transitions()) tr.emplace_back(t * m * t_inv);
  return Wfa(a.alphabet(), t * a.alpha(), t_inv.transpose() * a.beta(), std::move(tr));
}

Wfa pad(const Wfa& a, Eigen::Index extra) {
  const auto n = a.dim();
  Vector alpha = Vector::Zero(n + extra);
  Vector beta = Vector::Zero(n + extra);
  alpha.head(n) = a.alpha();
  beta.head(n) = a.beta();
  std::vector<Matrix> t;
  for (const auto& m : a.transitions()) {
    Matrix p = Matrix::Zero(n + extra, n + extra);
    p.topLeftCorner(n, n) = m;
    t.push_back(std::move(p));
  }
  return Wfa(a.alphabet(), std::move(alpha), std::move(beta), std::move(t));
}

}  // namespace wfa
