#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfa/core.hpp"
#include "wfa/learn.hpp"
#include "wfa/umdp.hpp"

namespace wfa::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ValidationError with
/// "source:line:column" in the message.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes `content` to `path`, or to stdout when path is empty or "-".
void write_output(const std::filesystem::path& path, const std::string& content);

/// Two-space indented JSON with a trailing newline. Doubles are written with
/// round-trip precision.
std::string dump(const Json& j);

// Field errors name the offending path, e.g. "trans.a[1][0]".
Wfa wfa_from_json(const Json& j);
Json to_json(const Wfa& a);

Umdp umdp_from_json(const Json& j);
Json to_json(const Umdp& u);

HankelBlock block_from_json(const Json& j);
Json to_json(const HankelBlock& b);

/// Either a plain array of numbers or {"vector": [...]}.
Vector vector_from_json(const Json& j, Eigen::Index expected_dim = -1);

/// One word per line; an empty line, "ε" or "<eps>" is the empty word.
/// Lines starting with '#' are ignored.
std::vector<Word> read_word_list(const std::filesystem::path& path, const Alphabet& alphabet);

/// 12 significant digits; used for all text and CSV output.
std::string num(double x);

}  // namespace wfa::io
