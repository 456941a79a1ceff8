#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aip/scene.hpp"

namespace aip {

enum class BuiltinScene { kBrownRoom, kBlueRoom, kAbstractShapes };

// brown_room and blue_room share geometry and differ only in the albedo
// palette. abstract_shapes gives every object its own class.
Scene MakeBuiltinScene(BuiltinScene which);

std::optional<BuiltinScene> BuiltinSceneFromName(std::string_view name);
std::string BuiltinSceneName(BuiltinScene which);
std::vector<std::string> BuiltinSceneNames();

// Resolves "builtin:<name>", a bare built-in name, or a scene file path.
Scene ResolveScene(const std::string& spec);

}  // namespace aip
