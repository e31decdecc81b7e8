#include "bergepart/serialize.hpp"

#include <charconv>
#include <sstream>

namespace bergepart {

nlohmann::ordered_json mask_to_json(SubsetMask s) {
  return nlohmann::ordered_json(s.elements());
}

SubsetMask mask_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("set must be an array of integers");
  std::vector<int> elements;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw FormatError("set elements must be integers");
    elements.push_back(e.get<int>());
  }
  try {
    return SubsetMask::of(elements);
  } catch (const std::out_of_range& err) {
    throw FormatError(err.what());
  }
}

nlohmann::ordered_json partition_to_json(const Partition& p) {
  nlohmann::ordered_json j;
  j["n"] = p.ground.n();
  j["family"] = std::string(family_name(p.family));
  auto parts = nlohmann::ordered_json::array();
  for (const auto& part : p.parts) {
    auto sets = nlohmann::ordered_json::array();
    for (SubsetMask s : part) sets.push_back(mask_to_json(s));
    parts.push_back(std::move(sets));
  }
  j["parts"] = std::move(parts);
  return j;
}

Partition partition_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("family") || !j.contains("parts")) {
    throw FormatError("partition JSON needs keys n, family, parts");
  }
  if (!j["n"].is_number_integer()) throw FormatError("n must be an integer");
  Partition p{GroundSet(j["n"].get<int>()), Family::PowerSet, {}};
  const auto family = parse_family(j["family"].get<std::string>());
  if (!family) throw FormatError("unknown family: " + j["family"].get<std::string>());
  p.family = *family;
  if (!j["parts"].is_array()) throw FormatError("parts must be an array");
  for (const auto& part_json : j["parts"]) {
    if (!part_json.is_array()) throw FormatError("each part must be an array of sets");
    Part part;
    for (const auto& set_json : part_json) part.push_back(mask_from_json(set_json));
    p.parts.push_back(std::move(part));
  }
  return p;
}

std::string partition_to_text(const Partition& p) {
  const Partition canon = normalized(p);
  std::string out = "# n=" + std::to_string(canon.ground.n()) + " family=" + std::string(family_name(canon.family)) + "\n";
  for (const auto& part : canon.parts) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (i > 0) out += '|';
      out += part[i].empty() ? "-" : part[i].to_string();
    }
    out += '\n';
  }
  return out;
}

namespace {

int parse_int(std::string_view token) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw FormatError("bad integer: '" + std::string(token) + "'");
  return value;
}

SubsetMask parse_text_set(std::string_view token) {
  if (token == "-") return SubsetMask{};
  if (token.empty()) throw FormatError("empty set token; use '-' for the empty set");
  std::vector<int> elements;
  std::size_t start = 0;
  while (start <= token.size()) {
    const std::size_t comma = token.find(',', start);
    const std::size_t stop = comma == std::string_view::npos ? token.size() : comma;
    elements.push_back(parse_int(token.substr(start, stop - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return SubsetMask::of(elements);
  } catch (const std::out_of_range& err) {
    throw FormatError(err.what());
  }
}

}  // namespace

Partition partition_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty partition text");

  int n = 0;
  std::string family_token;
  {
    std::istringstream header(line);
    std::string hash, n_field, family_field;
    header >> hash >> n_field >> family_field;
    if (hash != "#" || n_field.rfind("n=", 0) != 0 || family_field.rfind("family=", 0) != 0) {
      throw FormatError("text header must read '# n=<n> family=<family>'");
    }
    n = parse_int(std::string_view(n_field).substr(2));
    family_token = family_field.substr(7);
  }
  const auto family = parse_family(family_token);
  if (!family) throw FormatError("unknown family: " + family_token);

  Partition p{GroundSet(n), *family, {}};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Part part;
    std::string_view rest(line);
    while (true) {
      const std::size_t bar = rest.find('|');
      part.push_back(parse_text_set(rest.substr(0, bar)));
      if (bar == std::string_view::npos) break;
      rest.remove_prefix(bar + 1);
    }
    p.parts.push_back(std::move(part));
  }
  return p;
}

Partition parse_partition(std::string_view content) {
  const std::size_t first = content.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw FormatError("empty partition file");
  if (content[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& err) {
      throw FormatError(std::string("invalid JSON: ") + err.what());
    }
    return partition_from_json(j);
  }
  return partition_from_text(content.substr(first));
}

}  // namespace bergepart
