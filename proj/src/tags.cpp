#include "forge/tags.hpp"

#include <array>
#include <cctype>

namespace forge {

std::string language_tag(std::string_view lang) {
    std::string tag = "[";
    for (size_t i = 0; i < lang.size(); ++i) {
        char c = lang[i];
        tag += i == 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
    }
    tag += ']';
    return tag;
}

bool is_language_tag_shape(std::string_view token) {
    if (token.size() < 4 || token.front() != '[' || token.back() != ']') return false;
    std::string_view body = token.substr(1, token.size() - 2);
    if (!std::isupper(static_cast<unsigned char>(body[0]))) return false;
    for (size_t i = 1; i < body.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(body[i]);
        if (!std::islower(c) && !std::isdigit(c) && c != '-') return false;
    }
    return true;
}

bool is_reserved_tag(std::string_view token) {
    static constexpr std::array<std::string_view, 9> kTaskTags = {
        kMaskToken, kTagMass,      kTagBmass,     kTagBrss,      kTagPmass,
        kTagHfss,   kTagMultiMass, kTagDeshuffle, kTagBartInfill};
    for (auto t : kTaskTags)
        if (token == t) return true;
    return is_language_tag_shape(token);
}

}  // namespace forge
