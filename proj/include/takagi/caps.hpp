#pragma once

#include <cstddef>

namespace takagi {

/// Process-wide resource caps. Library defaults: 2e7 enumerated words,
/// 1e6 level-set brackets. The CLI overrides them from TAKAGI_CAP.
std::size_t enumeration_cap();
void set_enumeration_cap(std::size_t cap);

std::size_t bracket_cap();
void set_bracket_cap(std::size_t cap);

}  // namespace takagi
