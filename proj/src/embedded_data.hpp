// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

// Contents of data/*.txt, compiled in by CMake.
namespace flkit::embedded {

std::string_view statement_kinds();
std::string_view stopwords();

}  // namespace flkit::embedded
