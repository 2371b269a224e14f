#include "sl/lexer.hpp"

#include <cctype>
#include <map>

namespace sl {

std::string tok_name(Tok k) {
    switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::UIdent: return "constructor name";
    case Tok::Int: return "integer";
    case Tok::Str: return "string literal";
    case Tok::TyVar: return "type variable";
    case Tok::KwSignature: return "SIGNATURE";
    case Tok::KwSpecification: return "SPECIFICATION";
    case Tok::KwType: return "'type'";
    case Tok::KwStartfrom: return "'startfrom'";
    case Tok::KwDynamic: return "'dynamic'";
    case Tok::KwAxiom: return "'axiom'";
    case Tok::KwContext: return "'context'";
    case Tok::KwInference: return "'inference'";
    case Tok::KwWhen: return "'when'";
    case Tok::KwOf: return "'of'";
    case Tok::KwLet: return "'let'";
    case Tok::KwRec: return "'rec'";
    case Tok::KwAnd: return "'and'";
    case Tok::KwMatch: return "'match'";
    case Tok::KwWith: return "'with'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwIn: return "'in'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwBox: return "'BOX'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Semi2: return "';;'";
    case Tok::Bar: return "'|'";
    case Tok::Star: return "'*'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'==>'";
    case Tok::BarDArrow: return "'|==>'";
    case Tok::RuleSep: return "rule separator";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'<>'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Underscore: return "'_'";
    case Tok::Hash: return "'#'";
    case Tok::Eof: return "end of input";
    }
    return "<token>";
}

namespace {

const std::map<std::string, Tok> kKeywords = {
    {"SIGNATURE", Tok::KwSignature}, {"SPECIFICATION", Tok::KwSpecification},
    {"type", Tok::KwType},           {"startfrom", Tok::KwStartfrom},
    {"dynamic", Tok::KwDynamic},     {"axiom", Tok::KwAxiom},
    {"context", Tok::KwContext},     {"inference", Tok::KwInference},
    {"when", Tok::KwWhen},           {"of", Tok::KwOf},
    {"let", Tok::KwLet},             {"rec", Tok::KwRec},
    {"and", Tok::KwAnd},             {"match", Tok::KwMatch},
    {"with", Tok::KwWith},           {"if", Tok::KwIf},
    {"then", Tok::KwThen},           {"else", Tok::KwElse},
    {"in", Tok::KwIn},               {"true", Tok::KwTrue},
    {"false", Tok::KwFalse},         {"BOX", Tok::KwBox},
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    SourceLoc loc{1, 1};

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void fail(SourceLoc at, const std::string& msg) {
        throw ParseError({at, Severity::Error, msg});
    }

    bool eof() const { return pos >= src.size(); }
    char peek(size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }
    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            loc.line++;
            loc.col = 1;
        } else {
            loc.col++;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '(' && peek(1) == '*') {
                SourceLoc start = loc;
                advance();
                advance();
                int depth = 1;
                while (depth > 0) {
                    if (eof()) fail(start, "unterminated comment");
                    if (peek() == '(' && peek(1) == '*') {
                        advance();
                        advance();
                        depth++;
                    } else if (peek() == '*' && peek(1) == ')') {
                        advance();
                        advance();
                        depth--;
                    } else {
                        advance();
                    }
                }
            } else {
                break;
            }
        }
    }

    Token lex_string() {
        SourceLoc start = loc;
        advance(); // opening quote
        std::string s;
        for (;;) {
            if (eof()) fail(start, "unterminated string literal");
            char c = advance();
            if (c == '"') break;
            if (c == '\n') fail(start, "unterminated string literal");
            if (c == '\\') {
                if (eof()) fail(start, "unterminated string literal");
                char e = advance();
                if (e == '"') s += '"';
                else if (e == '\\') s += '\\';
                else fail(loc, std::string("invalid escape '\\") + e + "' in string literal");
            } else {
                s += c;
            }
        }
        // Names of the shape _g<digits> are reserved for the fresh-name
        // supply; rejecting them on input keeps generated names collision-free.
        if (s.size() >= 3 && s[0] == '_' && s[1] == 'g') {
            bool digits = true;
            for (size_t i = 2; i < s.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(s[i]))) { digits = false; break; }
            if (digits) fail(start, "string literal \"" + s + "\" uses a reserved fresh-name");
        }
        return {Tok::Str, s, 0, start};
    }

    Token next() {
        skip_space_and_comments();
        SourceLoc start = loc;
        if (eof()) return {Tok::Eof, "", 0, start};
        char c = peek();

        if (c == '"') return lex_string();

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
            try {
                return {Tok::Int, digits, std::stoll(digits), start};
            } catch (const std::out_of_range&) {
                fail(start, "integer literal out of range: " + digits);
            }
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (!eof()) {
                char d = peek();
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'')
                    id += advance();
                else
                    break;
            }
            auto it = kKeywords.find(id);
            if (it != kKeywords.end()) return {it->second, id, 0, start};
            bool upper = std::isupper(static_cast<unsigned char>(id[0])) != 0;
            return {upper ? Tok::UIdent : Tok::Ident, id, 0, start};
        }

        switch (c) {
        case '_': {
            // `_` alone is the wildcard; identifiers never start with it.
            advance();
            if (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                fail(start, "identifiers may not start with '_'");
            return {Tok::Underscore, "_", 0, start};
        }
        case '\'': {
            // The text is the variable without its quote, so diagnostics
            // can add their own.
            advance();
            std::string id;
            while (!eof() && std::isalnum(static_cast<unsigned char>(peek()))) id += advance();
            return {Tok::TyVar, id, 0, start};
        }
        case '(': advance(); return {Tok::LParen, "(", 0, start};
        case ')': advance(); return {Tok::RParen, ")", 0, start};
        case ',': advance(); return {Tok::Comma, ",", 0, start};
        case ':': advance(); return {Tok::Colon, ":", 0, start};
        case '#': advance(); return {Tok::Hash, "#", 0, start};
        case '+': advance(); return {Tok::Plus, "+", 0, start};
        case '*': advance(); return {Tok::Star, "*", 0, start};
        case ';':
            advance();
            if (peek() == ';') {
                advance();
                return {Tok::Semi2, ";;", 0, start};
            }
            fail(start, "unexpected ';' (did you mean ';;'?)");
        case '|':
            advance();
            if (peek() == '=' && peek(1) == '=' && peek(2) == '>') {
                advance(); advance(); advance();
                return {Tok::BarDArrow, "|==>", 0, start};
            }
            return {Tok::Bar, "|", 0, start};
        case '=':
            advance();
            if (peek() == '=' && peek(1) == '>') {
                advance(); advance();
                return {Tok::DArrow, "==>", 0, start};
            }
            return {Tok::Eq, "=", 0, start};
        case '<':
            advance();
            if (peek() == '>') { advance(); return {Tok::Neq, "<>", 0, start}; }
            if (peek() == '=') { advance(); return {Tok::Le, "<=", 0, start}; }
            return {Tok::Lt, "<", 0, start};
        case '>':
            advance();
            if (peek() == '=') { advance(); return {Tok::Ge, ">=", 0, start}; }
            return {Tok::Gt, ">", 0, start};
        case '-': {
            if (peek(1) == '>') {
                advance(); advance();
                return {Tok::Arrow, "->", 0, start};
            }
            size_t dashes = 0;
            while (!eof() && peek() == '-') { advance(); dashes++; }
            if (dashes == 1) return {Tok::Minus, "-", 0, start};
            if (dashes >= 3) return {Tok::RuleSep, std::string(dashes, '-'), 0, start};
            fail(start, "unexpected '--'");
        }
        default:
            fail(start, std::string("unknown token '") + c + "'");
        }
    }
};

} // namespace

std::vector<Token> lex(const std::string& src) {
    Lexer lx(src);
    std::vector<Token> out;
    for (;;) {
        Token t = lx.next();
        bool done = t.kind == Tok::Eof;
        out.push_back(std::move(t));
        if (done) break;
    }
    return out;
}

} // namespace sl
