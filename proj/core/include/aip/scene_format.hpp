#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "aip/scene.hpp"

namespace aip {

// Text scene format, header `aipscene v1`. One statement per line, `#`
// starts a comment, tokens are whitespace separated.
//
//   aipscene v1
//   name <ident>
//   camera <width> <height> <vfov_deg> <near>
//   max_range <meters>
//   bounds <minx> <miny> <minz> <maxx> <maxy> <maxz>
//   class <name>
//   texture <name> checker <w> <h> <tiles> <r> <g> <b> <r> <g> <b>
//   texture <name> file <png path>
//   material <name> albedo <r> <g> <b> [specular <s>] [shininess <n>]
//            [reflectivity <k>] [texture <name>]
//   profile <name> ambient <r> <g> <b> [unlit]
//   light <profile> directional <dx> <dy> <dz> color <r> <g> <b>
//         intensity <i> [radius <r>]
//   light <profile> point <x> <y> <z> color <r> <g> <b> intensity <i>
//         [radius <r>]
//   object <id> class <name|id> material <name>
//     transform <12 numbers, row-major 3x4>
//     lod
//       v <x> <y> <z> [n <nx> <ny> <nz>] [uv <u> <v>]
//       f <i> <j> <k>
//     end
//     lod file <sidecar path>
//   end
//
// Class id 0 is always "other" and is implicit. Relative file paths resolve
// against `base_dir`.
Scene ParseScene(std::string_view text,
                 const std::filesystem::path& base_dir = {});
Scene LoadSceneFile(const std::filesystem::path& path);

// Canonical text form: geometry inlined, doubles printed with 17 significant
// digits and floats with 9, so ParseScene(SerializeScene(s)) == s.
std::string SerializeScene(const Scene& scene);

}  // namespace aip
