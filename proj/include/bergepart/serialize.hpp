#pragma once

// Partition file formats.
//
// JSON:  {"n": 5, "family": "power_set_star", "parts": [[[1,2],[3,5]], ...]}
//        Part and set order are kept exactly as given.
//
// Text:  a header line "# n=<n> family=<family>", then one part per line.
//        Sets are separated by '|', elements by ','; the empty set is "-".
//        Writing normalizes (sets ascending by mask, parts lexicographic), so
//        canonical text survives parse/write unchanged.

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

#include "bergepart/setcore.hpp"

namespace bergepart {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] nlohmann::ordered_json partition_to_json(const Partition& p);
[[nodiscard]] Partition partition_from_json(const nlohmann::json& j);

[[nodiscard]] std::string partition_to_text(const Partition& p);
[[nodiscard]] Partition partition_from_text(std::string_view text);

/// Dispatches on the first non-blank character: '{' is JSON, anything else text.
[[nodiscard]] Partition parse_partition(std::string_view content);

[[nodiscard]] nlohmann::ordered_json mask_to_json(SubsetMask s);
[[nodiscard]] SubsetMask mask_from_json(const nlohmann::json& j);

}  // namespace bergepart
