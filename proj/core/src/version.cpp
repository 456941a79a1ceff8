#include "aip/version.hpp"

namespace aip {

const char* ToolVersion() { return AIP_VERSION; }

}  // namespace aip
