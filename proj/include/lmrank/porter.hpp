#pragma once

#include <string>
#include <string_view>

namespace lmrank {

// Porter's suffix-stripping algorithm (the original 1980 formulation,
// steps 1a through 5b). Expects a lowercase token; characters outside
// [a-z] are treated as consonants.
std::string porter_stem(std::string_view word);

}  // namespace lmrank
