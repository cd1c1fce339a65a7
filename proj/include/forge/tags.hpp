#ifndef FORGE_TAGS_HPP
#define FORGE_TAGS_HPP

#include <string>
#include <string_view>

namespace forge {

// Reserved tag vocabulary. Corpus tokens are never allowed to collide with
// these: they are prepended verbatim to sources/targets in multi-task
// datasets and the model must be able to tell them apart from text.
inline constexpr std::string_view kMaskToken = "[M]";
inline constexpr std::string_view kTagMass = "[MASS]";
inline constexpr std::string_view kTagBmass = "[BMASS]";
inline constexpr std::string_view kTagBrss = "[BRSS]";
inline constexpr std::string_view kTagPmass = "[PMASS]";
inline constexpr std::string_view kTagHfss = "[HFSS]";
inline constexpr std::string_view kTagMultiMass = "[MULTIMASS]";
inline constexpr std::string_view kTagDeshuffle = "[DESHUFFLE]";
inline constexpr std::string_view kTagBartInfill = "[BART]";

// "[Ja]", "[En]", "[Zh]", "[Ko]", ... from a lowercase language code.
std::string language_tag(std::string_view lang);

// Matches the language-tag shape: '[' + one uppercase ASCII letter + one or
// more lowercase ASCII letters/digits/'-' + ']'.
bool is_language_tag_shape(std::string_view token);

// Any tag the toolkit may emit: the mask token, a task tag, or a
// language-shaped tag.
bool is_reserved_tag(std::string_view token);

}  // namespace forge

#endif
