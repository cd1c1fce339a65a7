#ifndef FORGE_TEXT_HPP
#define FORGE_TEXT_HPP

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

namespace forge {

// Unicode general category P*.
bool is_punct_codepoint(uint32_t cp);

// A token counts as a punctuation mark when every codepoint in it is P*,
// or when it appears verbatim in the caller-supplied extra list.
bool is_punct_token(std::string_view token, const std::set<std::string>& extra = {});

// Decodes one UTF-8 codepoint at byte offset i; advances i. Returns the
// replacement character U+FFFD on malformed input (and advances one byte).
uint32_t decode_utf8(std::string_view s, size_t& i);

// The topic marker particle. Exact-string match on the token; segmentation
// upstream already isolates particles.
inline constexpr std::string_view kTopicMarkerWa = "\xe3\x81\xaf";  // は

}  // namespace forge

#endif
