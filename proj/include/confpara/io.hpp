#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "confpara/action.hpp"
#include "confpara/configurations.hpp"
#include "confpara/paradox.hpp"
#include "confpara/window.hpp"

namespace confpara::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

enum class ObjectKind { group, action, partition, pair, decomposition, verdict, report };

std::string kind_name(ObjectKind kind);

/// {"schema-version": "1", "<kind>": payload, "metadata": {...}}.
/// The payload is validated strictly on parse and kept as JSON, so emitting a
/// parsed manifest reproduces canonical input byte for byte.
struct Manifest {
  ObjectKind kind = ObjectKind::report;
  Json payload;
  std::map<std::string, std::string> metadata;
};

/// Throws InputError with a JSON pointer for every schema violation.
Manifest parse_manifest(std::string_view text);
Manifest read_manifest(const std::filesystem::path& file);
/// Sorted keys, two-space indentation, trailing newline.
std::string emit_manifest(const Manifest& manifest);

// Typed views of payloads. `path` is the JSON pointer of `j` for error messages.

Group group_from_json(const Json& j, const std::string& path = "/group");
Action action_from_json(const Json& j, const std::string& path = "/action");
/// A group manifest is read as its left translation.
Action action_from_manifest(const Manifest& m);

Element element_from_json(const Group& group, const Json& j, const std::string& path);
Json element_to_json(const Group& group, const Element& e);
Point point_from_json(const Action& action, const Json& j, const std::string& path);
Json point_to_json(const Action& action, const Point& x);

Partition partition_from_json(const Action& action, const Json& j, const std::string& path = "/partition");

struct LoadedPair {
  Action action;
  ConfigPair pair;
};
/// {"action": ..., "tuple": [...], "partition": ..., "generating": bool}
LoadedPair pair_from_json(const Json& j, const std::string& path = "/pair");
/// The same pair read as a sequence that is the identity after the tuple.
CountablePair countable_pair(const LoadedPair& loaded);

/// {"ball": r}, {"box": r}, {"prefix": n}, {"all": true}, {"range": [lo, hi]},
/// {"layered": {"base": window, "layers": k}}.
Window window_from_json(const Action& action, const Json& j, const std::string& path = "/window");
Window parse_window(const Action& action, std::string_view text);

/// Builds a decomposition from a construction payload. Every construction
/// names its cover oracles, which must match the builtin oracle of that
/// construction.
Decomposition decomposition_from_json(const Json& j, const std::string& path = "/decomposition");

Json verdict_to_json(const Verdict& v);
Json configuration_to_json(const Configuration& c);

}  // namespace confpara::io
