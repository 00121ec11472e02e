#include "wfa/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace wfa::io {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw ValidationError("field '" + path + "': " + msg);
}

const Json& require(const Json& j, const std::string& key, const std::string& where = "") {
  if (!j.is_object()) field_error(where.empty() ? "<root>" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

Vector vector_field(const Json& j, const std::string& path, Eigen::Index n) {
  if (!j.is_array()) field_error(path, "expected an array of numbers");
  if (n >= 0 && static_cast<Eigen::Index>(j.size()) != n)
    field_error(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Matrix matrix_field(const Json& j, const std::string& path, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array()) field_error(path, "expected an array of rows");
  if (rows >= 0 && static_cast<Eigen::Index>(j.size()) != rows)
    field_error(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  const auto r = static_cast<Eigen::Index>(j.size());
  Eigen::Index c = cols;
  if (c < 0) c = r > 0 && j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) m.row(i) = vector_field(j[i], path + "[" + std::to_string(i) + "]", c).transpose();
  return m;
}

Json array_of(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json rows_of(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(array_of(m.row(i).transpose()));
  return a;
}

Alphabet alphabet_field(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) field_error(path, "expected a non-empty array of strings");
  std::vector<std::string> syms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) field_error(path + "[" + std::to_string(i) + "]", "expected a string");
    syms.push_back(j[i].get<std::string>());
  }
  try {
    return Alphabet(std::move(syms));
  } catch (const ValidationError& e) {
    field_error(path, e.what());
  }
}

Eigen::Index dim_field(const Json& j) {
  const Json& d = require(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 0) field_error("dim", "expected a non-negative integer");
  return static_cast<Eigen::Index>(d.get<long long>());
}

std::vector<Matrix> per_symbol(const Json& j, const Alphabet& alphabet, const std::string& key, Eigen::Index rows,
                               Eigen::Index cols) {
  const Json& t = require(j, key);
  if (!t.is_object()) field_error(key, "expected an object keyed by symbol");
  for (auto it = t.begin(); it != t.end(); ++it) {
    try {
      alphabet.index_of(it.key());
    } catch (const ValidationError&) {
      field_error(key + "." + it.key(), "symbol is not in the alphabet");
    }
  }
  std::vector<Matrix> out;
  for (const auto& s : alphabet.symbols()) {
    auto it = t.find(s);
    if (it == t.end()) field_error(key + "." + s, "missing");
    // An empty array stands for a matrix with no rows (dimension 0).
    out.push_back(rows == 0 ? Matrix(0, std::max<Eigen::Index>(cols, 0)) : matrix_field(*it, key + "." + s, rows, cols));
  }
  return out;
}

std::vector<Word> word_list(const Json& j, const std::string& path, const Alphabet& alphabet) {
  if (!j.is_array() || j.empty()) field_error(path, "expected a non-empty array of words");
  std::vector<Word> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_string()) field_error(p, "expected a string");
    try {
      out.push_back(alphabet.parse(j[i].get<std::string>()));
    } catch (const ValidationError& e) {
      field_error(p, e.what());
    }
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_text_file(path), path.string()); }

void write_output(const std::filesystem::path& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Wfa wfa_from_json(const Json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  Alphabet alphabet = alphabet_field(require(j, "alphabet"), "alphabet");
  const auto n = dim_field(j);
  Vector alpha = vector_field(require(j, "alpha"), "alpha", n);
  Vector beta = vector_field(require(j, "beta"), "beta", n);
  auto trans = per_symbol(j, alphabet, "trans", n, n);
  return Wfa(std::move(alphabet), std::move(alpha), std::move(beta), std::move(trans));
}

Json to_json(const Wfa& a) {
  Json j;
  j["alphabet"] = a.alphabet().symbols();
  j["dim"] = a.dim();
  j["alpha"] = array_of(a.alpha());
  j["beta"] = array_of(a.beta());
  Json t = Json::object();
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) t[a.alphabet()[static_cast<Symbol>(s)]] = rows_of(a.trans(static_cast<Symbol>(s)));
  j["trans"] = std::move(t);
  return j;
}

Umdp umdp_from_json(const Json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  Alphabet alphabet = alphabet_field(require(j, "alphabet"), "alphabet");
  const auto n = dim_field(j);
  Vector alpha = vector_field(require(j, "alpha"), "alpha", n);
  Vector beta = vector_field(require(j, "beta"), "beta", n);
  auto trans = per_symbol(j, alphabet, "trans", n, n);
  const double gamma = number(require(j, "gamma"), "gamma");
  return Umdp(std::move(alphabet), std::move(alpha), std::move(beta), std::move(trans), gamma);
}

Json to_json(const Umdp& u) {
  Json j;
  j["alphabet"] = u.actions().symbols();
  j["dim"] = u.states();
  j["alpha"] = array_of(u.alpha());
  j["beta"] = array_of(u.beta());
  Json t = Json::object();
  for (std::size_t s = 0; s < u.actions().size(); ++s) t[u.actions()[static_cast<Symbol>(s)]] = rows_of(u.trans(static_cast<Symbol>(s)));
  j["trans"] = std::move(t);
  j["gamma"] = u.gamma();
  return j;
}

HankelBlock block_from_json(const Json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  HankelBlock b;
  b.alphabet = alphabet_field(require(j, "alphabet"), "alphabet");
  b.prefixes = word_list(require(j, "prefixes"), "prefixes", b.alphabet);
  b.suffixes = word_list(require(j, "suffixes"), "suffixes", b.alphabet);
  const auto np = static_cast<Eigen::Index>(b.prefixes.size());
  const auto ns = static_cast<Eigen::Index>(b.suffixes.size());
  b.h = matrix_field(require(j, "H"), "H", np, ns);
  b.hsig = per_symbol(j, b.alphabet, "Hsig", np, ns);
  b.hp = vector_field(require(j, "hP"), "hP", np);
  b.hs = vector_field(require(j, "hS"), "hS", ns);
  validate(b);
  return b;
}

Json to_json(const HankelBlock& b) {
  Json j;
  j["alphabet"] = b.alphabet.symbols();
  Json p = Json::array(), s = Json::array();
  for (const auto& w : b.prefixes) p.push_back(b.alphabet.format(w));
  for (const auto& w : b.suffixes) s.push_back(b.alphabet.format(w));
  j["prefixes"] = std::move(p);
  j["suffixes"] = std::move(s);
  j["H"] = rows_of(b.h);
  Json hs = Json::object();
  for (std::size_t k = 0; k < b.alphabet.size(); ++k) hs[b.alphabet[static_cast<Symbol>(k)]] = rows_of(b.hsig[k]);
  j["Hsig"] = std::move(hs);
  j["hP"] = array_of(b.hp);
  j["hS"] = array_of(b.hs);
  return j;
}

Vector vector_from_json(const Json& j, Eigen::Index expected_dim) {
  if (j.is_object()) return vector_field(require(j, "vector"), "vector", expected_dim);
  return vector_field(j, "<root>", expected_dim);
}

std::vector<Word> read_word_list(const std::filesystem::path& path, const Alphabet& alphabet) {
  std::istringstream in(read_text_file(path));
  std::vector<Word> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    try {
      out.push_back(alphabet.parse(line));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (out.empty()) throw ValidationError(path.string() + ": no words");
  return out;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace wfa::io
