#include "forge/text.hpp"

#include <algorithm>
#include <iterator>

namespace forge {

#include "unicode_punct.inc"

bool is_punct_codepoint(uint32_t cp) {
    auto end = std::end(kPunctRanges);
    auto it = std::upper_bound(std::begin(kPunctRanges), end, cp,
                               [](uint32_t v, const uint32_t (&r)[2]) { return v < r[0]; });
    if (it == std::begin(kPunctRanges)) return false;
    --it;
    return cp >= (*it)[0] && cp <= (*it)[1];
}

uint32_t decode_utf8(std::string_view s, size_t& i) {
    const auto byte = [&](size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    uint32_t cp = 0;
    if ((b0 & 0xe0) == 0xc0) {
        len = 2;
        cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
        len = 3;
        cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        unsigned char b = byte(i + k);
        if ((b & 0xc0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3f);
    }
    i += len;
    return cp;
}

bool is_punct_token(std::string_view token, const std::set<std::string>& extra) {
    if (token.empty()) return false;
    if (!extra.empty() && extra.count(std::string(token))) return true;
    size_t i = 0;
    while (i < token.size()) {
        if (!is_punct_codepoint(decode_utf8(token, i))) return false;
    }
    return true;
}

}  // namespace forge
