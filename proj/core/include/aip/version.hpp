#pragma once

namespace aip {

const char* ToolVersion();

}  // namespace aip
