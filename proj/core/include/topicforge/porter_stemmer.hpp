#pragma once

#include <string>
#include <string_view>

namespace topicforge {

/// English suffix stripping following Porter's original five-step rule set.
///
/// Input is expected lowercase. Words of one or two letters, and words with
/// any character outside a-z, are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace topicforge
