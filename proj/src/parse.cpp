#include "combench/parse.hpp"

#include <json.hpp>

namespace combench {

using nlohmann::json;

namespace {

std::optional<Submission> to_submission(const json& j) {
  if (!j.is_object()) return std::nullopt;
  auto sat = j.find("satisfiable");
  if (sat == j.end() || !sat->is_boolean()) return std::nullopt;
  Submission s;
  s.satisfiable = sat->get<bool>();
  auto sol = j.find("solution");
  if (sol != j.end() && !sol->is_null()) {
    if (!sol->is_array()) return std::nullopt;
    std::vector<int> values;
    for (const auto& v : *sol) {
      if (!v.is_number_integer()) return std::nullopt;
      values.push_back(v.get<int>());
    }
    s.solution = std::move(values);
  }
  auto reason = j.find("reasoning");
  if (reason != j.end() && reason->is_string()) s.reasoning = reason->get<std::string>();
  return s;
}

std::optional<Submission> parse_strict(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  return to_submission(j);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Collects the contents of ``` fenced blocks, tolerating a language tag.
std::vector<std::string> fenced_blocks(const std::string& text) {
  std::vector<std::string> blocks;
  size_t pos = 0;
  for (;;) {
    size_t open = text.find("```", pos);
    if (open == std::string::npos) break;
    size_t body = open + 3;
    size_t eol = text.find('\n', body);
    if (eol == std::string::npos) break;
    // skip a one-word language tag on the fence line
    std::string tag = trim(text.substr(body, eol - body));
    size_t start = tag.find_first_of(" \t{[") == std::string::npos && !tag.empty() &&
                           tag.front() != '{' && tag.front() != '['
                       ? eol + 1
                       : body;
    size_t close = text.find("```", start);
    if (close == std::string::npos) break;
    blocks.push_back(text.substr(start, close - start));
    pos = close + 3;
  }
  return blocks;
}

// Balanced-brace scan starting from the '{' nearest before the anchor.
std::optional<std::string> brace_extract(const std::string& text) {
  size_t anchor = text.find("\"satisfiable\"");
  if (anchor == std::string::npos) return std::nullopt;
  size_t open = text.rfind('{', anchor);
  if (open == std::string::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  for (size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}') {
      if (--depth == 0) return text.substr(open, i - open + 1);
    }
  }
  return std::nullopt;
}

}  // namespace

ParseOutcome parse_response(const std::string& text) {
  ParseOutcome out;

  // stage 1: whole text is the object
  if (auto s = parse_strict(trim(text))) {
    out.ok = true;
    out.stage = 1;
    out.submission = *s;
    return out;
  }

  // stage 2: fenced blocks, last valid wins
  std::optional<Submission> best;
  for (const auto& block : fenced_blocks(text))
    if (auto s = parse_strict(trim(block))) best = *s;
  if (best) {
    out.ok = true;
    out.stage = 2;
    out.submission = *best;
    return out;
  }

  // stage 3: brace-balanced extraction at the first "satisfiable" key
  if (auto span = brace_extract(text)) {
    if (auto s = parse_strict(*span)) {
      out.ok = true;
      out.stage = 3;
      out.submission = *s;
      return out;
    }
  }

  out.error = "no parseable submission found";
  return out;
}

}  // namespace combench
