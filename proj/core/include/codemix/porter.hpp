#pragma once

#include <string>
#include <string_view>

namespace codemix {

/// Porter (1980) suffix-stripping stemmer as in Martin Porter's reference C
/// release: words of one or two letters are returned unchanged, step 2 maps
/// "bli" to "ble" and "logi" to "log". Input is a lowercase ASCII word;
/// characters outside a-z are treated as consonants.
std::string porter_stem(std::string_view word);

}  // namespace codemix
