#include "pqcaudit/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

#include "pqcaudit/util.hpp"

namespace pqcaudit {

namespace {

[[noreturn]] void fail(std::size_t line_no, std::string_view what) {
    throw std::runtime_error(fmt::format("config line {}: {}", line_no, what));
}

bool is_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' ||
           c == '-';
}

// Cursor over one logical line's value text.
struct ValueCursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    void skip_spaces() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
};

std::string parse_quoted_string(ValueCursor& cur) {
    if (cur.done() || cur.peek() != '"') fail(cur.line_no, "expected '\"'");
    ++cur.pos;
    std::string out;
    while (true) {
        if (cur.done()) fail(cur.line_no, "unterminated string");
        const char c = cur.text[cur.pos++];
        if (c == '"') break;
        if (c == '\\') {
            if (cur.done()) fail(cur.line_no, "dangling escape");
            const char esc = cur.text[cur.pos++];
            switch (esc) {
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                default: fail(cur.line_no, fmt::format("unknown escape '\\{}'", esc));
            }
        } else {
            out.push_back(c);
        }
    }
    return out;
}

ConfigValue parse_value(ValueCursor& cur) {
    cur.skip_spaces();
    if (cur.done()) fail(cur.line_no, "missing value");

    const char first = cur.peek();
    if (first == '"') {
        return parse_quoted_string(cur);
    }
    if (first == '[') {
        ++cur.pos;
        std::vector<std::string> items;
        cur.skip_spaces();
        if (!cur.done() && cur.peek() == ']') {
            ++cur.pos;
            return items;
        }
        while (true) {
            cur.skip_spaces();
            items.push_back(parse_quoted_string(cur));
            cur.skip_spaces();
            if (cur.done()) fail(cur.line_no, "unterminated array");
            const char c = cur.text[cur.pos++];
            if (c == ']') break;
            if (c != ',') fail(cur.line_no, "expected ',' or ']' in array");
        }
        return items;
    }

    // Bare token: bool, integer or float. Anything else is an error (no
    // unquoted strings).
    std::size_t end = cur.pos;
    while (end < cur.text.size() && cur.text[end] != ' ' && cur.text[end] != '\t' &&
           cur.text[end] != '#') {
        ++end;
    }
    const std::string token(cur.text.substr(cur.pos, end - cur.pos));
    cur.pos = end;

    if (token == "true") return true;
    if (token == "false") return false;

    const bool looks_float = token.find_first_of(".eE") != std::string::npos;
    try {
        std::size_t used = 0;
        if (looks_float) {
            const double value = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            return value;
        }
        const long long value = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        fail(cur.line_no,
             fmt::format("invalid value '{}' (strings must be quoted)", token));
    }
}

}  // namespace

ConfigTable parse_config_text(std::string_view text) {
    ConfigTable table;
    std::string section;

    std::size_t line_no = 0;
    for (const std::string& raw_line : split_lines(text)) {
        ++line_no;
        std::string line = trim_copy(raw_line);
        if (line.empty() || line[0] == '#') continue;

        if (line[0] == '[') {
            const auto close = line.find(']');
            if (close == std::string::npos) fail(line_no, "unterminated section header");
            if (!trim_copy(line.substr(close + 1)).empty() &&
                trim_copy(line.substr(close + 1))[0] != '#') {
                fail(line_no, "trailing text after section header");
            }
            section = trim_copy(line.substr(1, close - 1));
            if (section.empty()) fail(line_no, "empty section name");
            for (char c : section) {
                if (!is_key_char(c)) {
                    fail(line_no, fmt::format("bad section name '{}'", section));
                }
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key_part = trim_copy(line.substr(0, eq));
        if (key_part.empty()) fail(line_no, "empty key");
        for (char c : key_part) {
            if (!is_key_char(c)) fail(line_no, fmt::format("bad key '{}'", key_part));
        }

        ValueCursor cur{line, eq + 1, line_no};
        ConfigValue value = parse_value(cur);
        cur.skip_spaces();
        if (!cur.done() && cur.peek() != '#') {
            fail(line_no, "trailing text after value");
        }

        const std::string full_key =
            section.empty() ? key_part : section + "." + key_part;
        if (!table.emplace(full_key, std::move(value)).second) {
            fail(line_no, fmt::format("duplicate key '{}'", full_key));
        }
    }
    return table;
}

ConfigTable load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(
            fmt::format("cannot open config file '{}'", path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string render_config_value(const ConfigValue& value) {
    const auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        out.push_back('"');
        return out;
    };

    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, long long>) {
                return fmt::format("{}", v);
            } else if constexpr (std::is_same_v<T, double>) {
                return fmt::format("{}", v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return quote(v);
            } else {
                std::string out = "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out.push_back(',');
                    out += quote(v[i]);
                }
                out.push_back(']');
                return out;
            }
        },
        value);
}

}  // namespace pqcaudit
