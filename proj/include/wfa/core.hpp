#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wfa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Index of a symbol in a canonically ordered alphabet.
using Symbol = std::uint32_t;

/// A finite string, as symbol indices. Lexicographic order on words follows
/// the canonical (sorted) order of the alphabet.
using Word = std::vector<Symbol>;

/// Raised when input data violates a documented precondition (bad shapes,
/// unknown symbols, malformed files). The CLI maps it to exit status 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a discount factor cannot be certified admissible, i.e. no
/// working norm with gamma * theta < 1 was found. Exit status 2 in the CLI.
class CannotCertify : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorted, duplicate-free list of symbol names.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::string& operator[](Symbol s) const { return symbols_[s]; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  /// Throws ValidationError naming the symbol when it is not in the alphabet.
  Symbol index_of(std::string_view name) const;

  /// Parses the textual word syntax: "" / "ε" / "<eps>" is the empty word;
  /// when every symbol is one character, "abba" is read per character;
  /// otherwise symbols are separated by whitespace or commas.
  Word parse(std::string_view text) const;

  /// Inverse of parse(); the empty word formats as "".
  std::string format(std::span<const Symbol> word) const;

  bool single_char() const { return single_char_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  bool single_char_ = true;
};

/// Every word over `alphabet` of length at most `max_len`, shortlex ordered.
std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len);

/// Dense weighted finite automaton over the reals.
///
/// States are column vectors; trans(s) acts by matrix-vector product and
/// beta acts by dot product, so f(x) = beta . (T_{x_k} ... T_{x_1} alpha).
/// Instances are immutable after construction.
class Wfa {
 public:
  Wfa(Alphabet alphabet, Vector alpha, Vector beta, std::vector<Matrix> trans);

  const Alphabet& alphabet() const { return alphabet_; }
  Eigen::Index dim() const { return alpha_.size(); }
  const Vector& alpha() const { return alpha_; }
  const Vector& beta() const { return beta_; }
  const Matrix& trans(Symbol s) const { return trans_[s]; }
  const std::vector<Matrix>& transitions() const { return trans_; }

 private:
  Alphabet alphabet_;
  Vector alpha_;
  Vector beta_;
  std::vector<Matrix> trans_;
};

/// tau_x v for the word x (symbols applied left to right).
Vector run(const Wfa& a, const Vector& v, std::span<const Symbol> x);

double evaluate(const Wfa& a, std::span<const Symbol> x);
double evaluate(const Wfa& a, std::string_view x);

/// Swaps alpha and beta and transposes every transition; f_rev(x) = f(reverse x).
Wfa reverse(const Wfa& a);

/// Direct sum computing f1 - f2: alpha = alpha1 (+) -alpha2, beta = beta1 (+) beta2.
Wfa difference(const Wfa& a1, const Wfa& a2);

Wfa with_initial(const Wfa& a, const Vector& v);
Wfa with_final(const Wfa& a, const Vector& w);

/// Change of basis v -> T v: alpha' = T alpha, beta' = T^{-T} beta,
/// tau' = T tau T^{-1}. Realizes the same function.
Wfa conjugate(const Wfa& a, const Matrix& t);

/// Adds `extra` states with zero initial and final weight and zero
/// transitions in and out. Realizes the same function.
Wfa pad(const Wfa& a, Eigen::Index extra);

}  // namespace wfa
