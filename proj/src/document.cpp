#include "cbd/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cbd {

using nlohmann::ordered_json;

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::string out = "invalid system:";
  for (const auto& v : violations) out += "\n  " + v.location + ": " + v.message;
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw DocumentError(path + ": " + message);
}

const ordered_json& member(const ordered_json& object, const char* key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::vector<ContentId> content_list(const ordered_json& list, const std::string& path) {
  if (!list.is_array()) fail(path, "expected a list of names");
  std::vector<ContentId> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_string()) fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back({list[i].get<std::string>()});
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

System parse_system_document(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("parse error at " + line_column(text, e.byte) + ": " + e.what());
  }

  std::vector<ContentId> contents = content_list(member(doc, "contents", "document"), "contents");
  const auto& contexts = member(doc, "contexts", "document");
  if (!contexts.is_array()) fail("contexts", "expected a list of contexts");

  std::vector<Bunch> bunches;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const std::string path = "contexts[" + std::to_string(i) + "]";
    const auto& ctx = contexts[i];
    const auto& name = member(ctx, "name", path);
    if (!name.is_string()) fail(path + ".name", "expected a string");
    auto members = content_list(member(ctx, "contents", path), path + ".contents");
    if (members.size() > max_bunch_size) fail(path + ".contents", "too many contents in one context");

    Bunch::Table table;
    const auto& entries = member(ctx, "table", path);
    if (!entries.is_object()) fail(path + ".table", "expected an object of outcome: probability");
    for (const auto& [key, value] : entries.items()) {
      const std::string entry_path = path + ".table[\"" + key + "\"]";
      if (key.size() != members.size()) {
        fail(entry_path, "outcome has " + std::to_string(key.size()) + " signs but the context has " +
                             std::to_string(members.size()) + " contents");
      }
      if (!value.is_string()) fail(entry_path, "probability must be a string such as \"1/2\" or \"0.25\"");
      try {
        table[parse_assignment(key)] += parse_rational(value.get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail(entry_path, e.what());
      }
    }
    if (members.empty() && !table.empty() && table.begin()->second != 1) {
      fail(path + ".table", "a context with no contents has probability 1 on the empty outcome");
    }
    bunches.emplace_back(ContextId{name.get<std::string>()}, std::move(members), std::move(table));
  }

  System s(std::move(contents), std::move(bunches));
  if (auto violations = validate_system(s); !violations.empty()) throw ValidationError(std::move(violations));
  return s;
}

System load_system_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system_document(buffer.str());
}

std::string serialize_system_document(const System& s) {
  ordered_json doc;
  doc["contents"] = ordered_json::array();
  for (const auto& q : s.contents()) doc["contents"].push_back(q.name);
  doc["contexts"] = ordered_json::array();
  for (const auto& b : s.bunches()) {
    ordered_json ctx;
    ctx["name"] = b.context().name;
    ctx["contents"] = ordered_json::array();
    for (const auto& q : b.contents()) ctx["contents"].push_back(q.name);
    ordered_json table = ordered_json::object();
    const std::size_t m = b.size();
    const Assignment all = (Assignment{1} << m) - 1;
    // Descending over the bit-reversed order puts '+' first with the
    // first content varying slowest.
    for (Assignment rank = 0; rank <= all; ++rank) {
      Assignment a = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(rank & (Assignment{1} << (m - 1 - i)))) a |= Assignment{1} << i;
      }
      const Rational p = b.probability(a);
      if (p != 0) table[assignment_string(a, m)] = to_string(p);
    }
    ctx["table"] = std::move(table);
    doc["contexts"].push_back(std::move(ctx));
  }
  return doc.dump(2) + "\n";
}

}  // namespace cbd
