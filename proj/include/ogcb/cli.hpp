#pragma once

namespace ogcb::cli {

int run(int argc, const char* const* argv);

} // namespace ogcb::cli
