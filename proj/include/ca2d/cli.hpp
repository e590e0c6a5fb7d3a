#pragma once

#include <string>
#include <vector>

namespace ca2d::cli {

// Exit codes: 0 success / all verdicts pass, 2 usage or parse error,
// 3 domain error, 4 verdict failure.
int run(const std::vector<std::string>& args);

} // namespace ca2d::cli
