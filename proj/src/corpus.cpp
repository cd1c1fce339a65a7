#include "forge/corpus.hpp"

#include <json.hpp>

#include "forge/tags.hpp"

namespace forge {

using json = nlohmann::json;

namespace {

void append_json_string(std::string& out, std::string_view s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void append_token_array(std::string& out, const std::vector<std::string>& toks) {
    out += '[';
    for (size_t i = 0; i < toks.size(); ++i) {
        if (i) out += ',';
        append_json_string(out, toks[i]);
    }
    out += ']';
}

std::vector<std::string> tokens_from_json(const json& j) {
    if (!j.is_array()) throw std::runtime_error("\"tokens\" must be an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& t : j) {
        if (!t.is_string()) throw std::runtime_error("\"tokens\" must be an array of strings");
        out.push_back(t.get<std::string>());
    }
    return out;
}

std::string require_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw std::runtime_error(std::string("missing string field \"") + key + "\"");
    return it->get<std::string>();
}

}  // namespace

Schema schema_from_string(const std::string& name) {
    if (name == "plain") return Schema::Plain;
    if (name == "bunsetsu") return Schema::Bunsetsu;
    if (name == "tree") return Schema::Tree;
    throw std::invalid_argument("unknown schema '" + name + "' (plain|bunsetsu|tree)");
}

const char* schema_name(Schema s) {
    switch (s) {
        case Schema::Plain: return "plain";
        case Schema::Bunsetsu: return "bunsetsu";
        case Schema::Tree: return "tree";
    }
    return "?";
}

std::string check_sentence(const AnnotatedSentence& s) {
    if (s.id.empty()) return "empty sentence id";
    if (s.lang.empty()) return "empty language code";
    if (s.tokens.empty()) return "sentence has no tokens";
    for (const auto& t : s.tokens) {
        if (t.empty()) return "empty token";
        if (is_reserved_tag(t)) return "token collides with reserved tag '" + t + "'";
    }
    if (s.bunsetsu) {
        const auto& spans = *s.bunsetsu;
        if (spans.empty()) return "bunsetsu annotation is empty";
        int expect = 0;
        for (const auto& [start, end] : spans) {
            if (end <= start) return "empty bunsetsu span";
            if (start > expect) return "gap at index " + std::to_string(expect) + " in bunsetsu spans";
            if (start < expect) return "overlapping bunsetsu spans at index " + std::to_string(start);
            expect = end;
        }
        if (expect != s.length())
            return "bunsetsu spans cover [0," + std::to_string(expect) + ") but sentence has " +
                   std::to_string(s.length()) + " tokens";
    }
    if (s.tree) {
        if (s.tree->yield_tokens() != s.tokens) return "tree leaf yield does not match tokens";
    }
    return {};
}

AnnotatedSentence parse_sentence_line(const std::string& line, Schema schema) {
    json j = json::parse(line, nullptr, true);
    if (!j.is_object()) throw std::runtime_error("record is not a JSON object");

    AnnotatedSentence s;
    s.id = require_string(j, "id");
    s.lang = require_string(j, "lang");
    auto toks = j.find("tokens");
    if (toks == j.end()) throw std::runtime_error("missing \"tokens\" field");
    s.tokens = tokens_from_json(*toks);

    if (schema == Schema::Bunsetsu) {
        auto it = j.find("bunsetsu");
        if (it == j.end() || !it->is_array())
            throw std::runtime_error("bunsetsu schema requires a \"bunsetsu\" span array");
        std::vector<Span> spans;
        for (const auto& e : *it) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw std::runtime_error("bunsetsu spans must be [start,end] integer pairs");
            spans.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        s.bunsetsu = std::move(spans);
    } else if (schema == Schema::Tree) {
        auto it = j.find("tree");
        if (it == j.end() || !it->is_string())
            throw std::runtime_error("tree schema requires a \"tree\" s-expression string");
        s.tree = std::make_shared<ParseTree>(ParseTree::parse(it->get<std::string>()));
    }

    std::string err = check_sentence(s);
    if (!err.empty()) throw std::runtime_error(err);
    return s;
}

std::string sentence_to_json_line(const AnnotatedSentence& s, Schema schema) {
    std::string out = "{\"id\":";
    append_json_string(out, s.id);
    out += ",\"lang\":";
    append_json_string(out, s.lang);
    out += ",\"tokens\":";
    append_token_array(out, s.tokens);
    if (schema == Schema::Bunsetsu) {
        if (!s.bunsetsu) throw std::runtime_error("sentence lacks bunsetsu spans");
        out += ",\"bunsetsu\":[";
        for (size_t i = 0; i < s.bunsetsu->size(); ++i) {
            if (i) out += ',';
            out += '[' + std::to_string((*s.bunsetsu)[i].first) + ',' +
                   std::to_string((*s.bunsetsu)[i].second) + ']';
        }
        out += ']';
    } else if (schema == Schema::Tree) {
        if (!s.tree) throw std::runtime_error("sentence lacks a parse tree");
        out += ",\"tree\":";
        append_json_string(out, s.tree->serialize());
    }
    out += '}';
    return out;
}

PretrainPair parse_pair_line(const std::string& line) {
    json j = json::parse(line, nullptr, true);
    if (!j.is_object()) throw std::runtime_error("record is not a JSON object");
    PretrainPair p;
    p.id = require_string(j, "id");
    p.task = require_string(j, "task");
    p.lang = require_string(j, "lang");
    auto src = j.find("src");
    auto tgt = j.find("tgt");
    if (src == j.end() || tgt == j.end()) throw std::runtime_error("missing \"src\"/\"tgt\" field");
    p.src = tokens_from_json(*src);
    p.tgt = tokens_from_json(*tgt);
    if (auto it = j.find("variant"); it != j.end() && it->is_string())
        p.variant = it->get<std::string>();
    return p;
}

std::string pair_to_json_line(const PretrainPair& p) {
    std::string out = "{\"id\":";
    append_json_string(out, p.id);
    out += ",\"task\":";
    append_json_string(out, p.task);
    out += ",\"lang\":";
    append_json_string(out, p.lang);
    out += ",\"src\":";
    append_token_array(out, p.src);
    out += ",\"tgt\":";
    append_token_array(out, p.tgt);
    if (!p.variant.empty()) {
        out += ",\"variant\":";
        append_json_string(out, p.variant);
    }
    out += '}';
    return out;
}

std::string CorpusReport::to_json() const {
    std::string out = "{\"total\":" + std::to_string(total) + ",\"kept\":" + std::to_string(kept) +
                      ",\"dropped_too_long\":" + std::to_string(dropped_too_long) +
                      ",\"dropped_invalid\":" + std::to_string(dropped_invalid) +
                      ",\"invalid_reasons\":{";
    bool first = true;
    for (const auto& [reason, n] : invalid_reasons) {
        if (!first) out += ',';
        first = false;
        append_json_string(out, reason);
        out += ':' + std::to_string(n);
    }
    out += "}}";
    return out;
}

CorpusReader::CorpusReader(const std::string& path, Schema schema, ErrorPolicy policy,
                           std::optional<int> max_tokens)
    : in_(path), schema_(schema), policy_(policy), max_tokens_(max_tokens) {
    if (!in_) throw std::runtime_error("cannot open corpus file: " + path);
}

std::optional<AnnotatedSentence> CorpusReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line.empty()) continue;
        ++report_.total;
        AnnotatedSentence s;
        try {
            s = parse_sentence_line(line, schema_);
        } catch (const std::exception& e) {
            if (policy_ == ErrorPolicy::FailFast) throw CorpusError(line_no_, e.what());
            ++report_.dropped_invalid;
            ++report_.invalid_reasons[e.what()];
            continue;
        }
        if (max_tokens_ && !keep_length(s, *max_tokens_)) {
            ++report_.dropped_too_long;
            continue;
        }
        ++report_.kept;
        return s;
    }
    return std::nullopt;
}

PairWriter::PairWriter(const std::string& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

void PairWriter::write(const PretrainPair& p) { write_line(pair_to_json_line(p)); }

void PairWriter::write_line(const std::string& line) {
    out_ << line << '\n';
    if (!out_) throw std::runtime_error("write failed (partial output left at " + path_ + ")");
    ++count_;
}

void PairWriter::close() {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed (partial output left at " + path_ + ")");
    out_.close();
}

std::vector<AnnotatedSentence> read_all_sentences(const std::string& path, Schema schema,
                                                  ErrorPolicy policy) {
    CorpusReader reader(path, schema, policy);
    std::vector<AnnotatedSentence> out;
    while (auto s = reader.next()) out.push_back(std::move(*s));
    return out;
}

std::vector<PretrainPair> read_all_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pairs file: " + path);
    std::vector<PretrainPair> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(parse_pair_line(line));
        } catch (const std::exception& e) {
            throw CorpusError(line_no, e.what());
        }
    }
    return out;
}

}  // namespace forge
