#include "domkit/expr.hpp"

#include <algorithm>
#include <cctype>

#include "domkit/constructions.hpp"
#include "domkit/error.hpp"
#include "domkit/finite.hpp"

namespace domkit {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// "f(a, b)" -> ("f", {"a", "b"}); plain words give no arguments.
struct Call {
    std::string head;
    std::vector<std::string> args;
    bool has_parens = false;
};

Call split_call(const std::string& text) {
    Call c;
    std::string t = trim(text);
    auto open = t.find('(');
    if (open == std::string::npos) {
        c.head = t;
        return c;
    }
    if (t.back() != ')') throw ParseError("expected ')' at the end of '" + t + "'");
    c.head = trim(t.substr(0, open));
    c.has_parens = true;
    std::string body = t.substr(open + 1, t.size() - open - 2);
    int depth = 0;
    std::string cur;
    for (char ch : body) {
        if (ch == '(') ++depth;
        if (ch == ')' && --depth < 0) throw ParseError("unbalanced parentheses in '" + t + "'");
        if (ch == ',' && depth == 0) {
            c.args.push_back(trim(cur));
            cur.clear();
            continue;
        }
        cur += ch;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in '" + t + "'");
    if (!trim(cur).empty() || !c.args.empty()) c.args.push_back(trim(cur));
    return c;
}

unsigned long parse_count(const std::string& s, const std::string& what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw ParseError(what + " must be a non-negative integer, got '" + s + "'");
    return std::stoul(s);
}

bool cut_literal(const std::string& s) {
    return starts_with(s, "cut(") || starts_with(s, "fill(") || starts_with(s, "edge(") || s == "-inf" || s == "+inf";
}

class Parser {
public:
    Parser(const Dom& d, const std::string& text) : d_(d), s_(text) {}

    Value run() {
        Value v = expr();
        ws();
        if (i_ != s_.size()) throw ParseError("unexpected '" + s_.substr(i_) + "'");
        return v;
    }

private:
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    Element element(const Value& v) const {
        if (const auto* e = std::get_if<Element>(&v)) return *e;
        throw TypeError("a signature cannot be used as an operand");
    }

    Value expr() {
        Value v = term();
        for (;;) {
            ws();
            if (i_ >= s_.size() || s_[i_] == ')') return v;
            std::size_t start = i_;
            while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
            std::string op = s_.substr(start, i_ - start);
            if (i_ >= s_.size()) throw ParseError("missing operand after '" + op + "'");
            Element x = element(v);
            Element y = element(term());
            if (op == "+")
                v = d_.add(x, y);
            else if (op == "+R")
                v = d_.radd(x, y);
            else if (op == "-" || op == "−")
                v = d_.sub(x, y);
            else if (op == "-L" || op == "∸")
                v = d_.lsub(x, y);
            else
                throw ParseError("unknown operator '" + op + "'");
        }
    }

    Value term() {
        ws();
        if (i_ >= s_.size()) throw ParseError("expected a term at the end of input");
        for (const char* f : {"neg(", "width(", "abs(", "sign("}) {
            std::string fn(f);
            if (s_.compare(i_, fn.size(), fn) != 0) continue;
            i_ += fn.size();
            Value inner = expr();
            ws();
            if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')' after " + fn + "...");
            ++i_;
            Element x = element(inner);
            if (fn == "neg(") return d_.neg(x);
            if (fn == "width(") return d_.width(x);
            if (fn == "abs(") return d_.abs(x);
            return signature(d_, x);
        }
        if (s_[i_] == '(' && !tuple_ahead()) {
            ++i_;
            Value v = expr();
            ws();
            if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'");
            ++i_;
            return v;
        }
        return literal();
    }

    // '(' starts a tuple literal when its body has a top-level comma and no whitespace.
    bool tuple_ahead() const {
        int depth = 0;
        bool comma = false;
        for (std::size_t j = i_; j < s_.size(); ++j) {
            char c = s_[j];
            if (std::isspace(static_cast<unsigned char>(c))) return false;
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) return comma;
            if (c == ',' && depth == 1) comma = true;
        }
        return false;
    }

    Value literal() {
        std::size_t start = i_;
        int depth = 0;
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (std::isspace(static_cast<unsigned char>(c))) break;
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            ++i_;
        }
        std::string lit = s_.substr(start, i_ - start);
        if (lit.empty()) throw ParseError("expected a term at '" + s_.substr(start) + "'");
        if (depth != 0) throw ParseError("unbalanced parentheses in '" + lit + "'");
        Element x;
        try {
            x = d_.parse(lit);
        } catch (const ParseError&) {
            bool cuts = dynamic_cast<const CutDom*>(&d_) || dynamic_cast<const TildeDom*>(&d_);
            if (cut_literal(lit) && !cuts) throw TypeError("cut literal '" + lit + "' on carrier " + d_.name());
            throw;
        }
        if (!d_.contains(x)) throw TypeError("'" + lit + "' is not an element of " + d_.name());
        return x;
    }

    const Dom& d_;
    std::string s_;
    std::size_t i_ = 0;
};

}  // namespace

Group parse_group(const std::string& text) {
    Call c = split_call(text);
    if (c.head == "Z" && !c.has_parens) return Group::integers();
    if (c.head == "Q" && !c.has_parens) return Group::rationals();
    if (c.head == "Zloc" && c.args.size() == 1) return Group::localized(parse_count(c.args[0], "Zloc prime"));
    if (c.head == "lex" && !c.args.empty()) {
        std::vector<Group> parts;
        for (const auto& a : c.args) parts.push_back(parse_group(a));
        return parts.size() == 1 ? parts[0] : Group::lex(parts);
    }
    throw ParseError("unknown group '" + trim(text) + "'");
}

DomPtr parse_carrier(const std::string& text) {
    std::string t = trim(text);
    if (t.size() > 4 && t.substr(t.size() - 4) == ".tbl") return make_finite(load_table(t), t);
    Call c = split_call(t);
    auto one = [&](const char* what) -> const std::string& {
        if (c.args.size() != 1) throw ParseError(std::string(what) + " takes one argument");
        return c.args[0];
    };
    if (c.head == "cuts") return std::make_shared<CutDom>(CutEngine(parse_group(one("cuts"))));
    if (c.head == "tilde") return std::make_shared<TildeDom>(CutEngine(parse_group(one("tilde"))));
    if (c.head == "group") return std::make_shared<GroupDom>(parse_group(one("group")));
    if (c.head == "trivial") {
        auto n = parse_count(one("trivial"), "trivial size");
        if (n == 0) throw ParseError("trivial(0) is empty");
        return make_finite(trivial_dom(n), "trivial(" + std::to_string(n) + ")");
    }
    if (c.head == "table") return make_finite(load_table(one("table")), one("table"));
    if (c.head == "dual") return dual(parse_carrier(one("dual")));
    if (c.head == "inf") return infinity_extension(parse_carrier(one("inf")));
    if (c.head == "shift") return shift(parse_carrier(one("shift")));
    if (c.head == "quotient") return quotient_equiv(parse_carrier(one("quotient"))).dom;
    if (c.head == "cutsof") return cuts_of_dom(parse_carrier(one("cutsof")));
    try {
        return std::make_shared<GroupDom>(parse_group(t));
    } catch (const ParseError&) {
        throw ParseError("unknown carrier '" + t + "'");
    }
}

Value evaluate(const Dom& d, const std::string& text) { return Parser(d, text).run(); }

std::string format_value(const Dom& d, const Value& v) {
    if (const auto* e = std::get_if<Element>(&v)) return d.format(*e);
    return to_string(std::get<Signature>(v));
}

}  // namespace domkit
