#include "ach/problem.hpp"

#include <algorithm>
#include <cctype>

#include "ach/flat.hpp"

namespace ach {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line;

    int col() const { return static_cast<int>(pos) + 1; }
    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }
    void skip_ws() {
        while (!done() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, col(), what); }
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string read_ident(Cursor& c) {
    c.skip_ws();
    if (!ident_start(c.peek()))
        c.fail("expected identifier");
    int start_col = c.col();
    std::size_t begin = c.pos;
    while (!c.done() && ident_char(c.peek()))
        ++c.pos;
    std::string name(c.text.substr(begin, c.pos - begin));
    if (name[0] == '_') {
        if (FreshVars::is_fresh(name) || name == FreshVars::kPrefix)
            throw ParseError(c.line, start_col,
                             "identifier '" + name + "' uses the reserved prefix '" +
                                 std::string(FreshVars::kPrefix) + "'");
        throw ParseError(c.line, start_col, "identifiers must start with a letter");
    }
    return name;
}

struct TermParser {
    Cursor& c;
    const ProblemFile& file;
    std::map<std::string, unsigned>& free_arity;
    std::set<std::string> declared;

    TermParser(Cursor& c, ProblemFile& file)
        : c(c), file(file), free_arity(file.free_arity) {
        declared.insert(file.vars.begin(), file.vars.end());
        declared.insert(file.consts.begin(), file.consts.end());
    }

    Term parse_sum() {
        std::vector<Term> parts{parse_atom()};
        c.skip_ws();
        while (c.peek() == '+') {
            ++c.pos;
            parts.push_back(parse_atom());
            c.skip_ws();
        }
        return parts.size() == 1 ? parts.front() : Term::sum(std::move(parts));
    }

    Term parse_atom() {
        c.skip_ws();
        if (c.peek() == '(') {
            ++c.pos;
            Term t = parse_sum();
            c.skip_ws();
            if (c.peek() != ')')
                c.fail("expected ')'");
            ++c.pos;
            return t;
        }
        int name_col = c.col();
        std::string name = read_ident(c);
        c.skip_ws();
        if (c.peek() == '(') {
            ++c.pos;
            std::vector<Term> args{parse_sum()};
            c.skip_ws();
            while (c.peek() == ',') {
                ++c.pos;
                args.push_back(parse_sum());
                c.skip_ws();
            }
            if (c.peek() != ')')
                c.fail("expected ')' or ','");
            ++c.pos;
            return applied(name, std::move(args), name_col);
        }
        return bare(name, name_col);
    }

    Term applied(const std::string& name, std::vector<Term> args, int col) {
        if (name == "h") {
            if (args.size() != 1)
                throw ParseError(c.line, col, "h takes exactly one argument");
            return Term::h(args[0]);
        }
        if (declared.count(name))
            throw ParseError(c.line, col,
                             "'" + name + "' is declared as a variable or constant and cannot "
                                          "be applied");
        auto [it, inserted] = free_arity.emplace(name, static_cast<unsigned>(args.size()));
        if (!inserted && it->second != args.size())
            throw ParseError(c.line, col,
                             "'" + name + "' used with arity " + std::to_string(args.size()) +
                                 " but previously with arity " + std::to_string(it->second));
        return Term::app(name, std::move(args));
    }

    Term bare(const std::string& name, int col) {
        if (name == "h")
            throw ParseError(c.line, col, "'h' is reserved and must be applied");
        if (std::count(file.vars.begin(), file.vars.end(), name))
            return Term::variable(name);
        if (std::count(file.consts.begin(), file.consts.end(), name))
            return Term::constant(name);
        if (free_arity.count(name))
            throw ParseError(c.line, col,
                             "'" + name + "' is a free symbol of arity " +
                                 std::to_string(free_arity[name]) + " and needs arguments");
        throw ParseError(c.line, col, "undeclared identifier '" + name + "'");
    }
};

std::string_view strip_comment(std::string_view line) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos)
        line = line.substr(0, hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
        line.remove_suffix(1);
    std::size_t lead = 0;
    while (lead < line.size() && (line[lead] == ' ' || line[lead] == '\t'))
        ++lead;
    return line.substr(lead);
}

void declare_names(Cursor& c, ProblemFile& out, std::vector<std::string>& into, bool as_var) {
    while (true) {
        c.skip_ws();
        if (c.done())
            return;
        int col = c.col();
        std::string name = read_ident(c);
        if (name == "h")
            throw ParseError(c.line, col, "'h' is reserved and cannot be declared");
        bool dup = std::count(out.vars.begin(), out.vars.end(), name) ||
                   std::count(out.consts.begin(), out.consts.end(), name);
        if (dup)
            throw ParseError(c.line, col, "'" + name + "' declared twice");
        into.push_back(name);
        (void)as_var;
    }
}

} // namespace

ProblemFile parse_problem(std::string_view text) {
    ProblemFile out;
    int line_no = 0;
    bool in_problem = false;

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;

        std::string_view body = strip_comment(raw);
        if (body.empty()) {
            if (start > text.size())
                break;
            continue;
        }
        // cursor over the original line so columns point into the raw text
        Cursor c{raw, 0, line_no};

        if (!in_problem) {
            auto colon = body.find(':');
            std::string_view key = colon == std::string_view::npos ? body : body.substr(0, colon);
            c.pos = raw.find(key);
            if (key == "problem") {
                if (colon == std::string_view::npos)
                    c.fail("expected ':' after 'problem'");
                in_problem = true;
            } else if (key == "bound") {
                if (colon == std::string_view::npos)
                    c.fail("expected ':' after 'bound'");
                c.pos = raw.find(':', c.pos) + 1;
                c.skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(c.peek())))
                    c.fail("expected a natural number");
                unsigned value = 0;
                while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
                    value = value * 10 + static_cast<unsigned>(c.peek() - '0');
                    ++c.pos;
                }
                out.bound = value;
                out.bound_set = true;
            } else if (key == "vars" || key == "consts") {
                if (colon == std::string_view::npos)
                    c.fail("expected ':'");
                std::size_t after = raw.find(':', c.pos) + 1;
                std::size_t hash = raw.find('#');
                std::string_view rest =
                    raw.substr(after, hash == std::string_view::npos ? raw.size() - after
                                                                     : hash - after);
                Cursor names{rest, 0, line_no};
                declare_names(names, out, key == "vars" ? out.vars : out.consts, key == "vars");
            } else {
                c.fail("expected 'bound:', 'vars:', 'consts:', or 'problem:'");
            }
        } else {
            std::size_t hash = raw.find('#');
            std::string_view eq_text = hash == std::string_view::npos ? raw : raw.substr(0, hash);
            Cursor ec{eq_text, 0, line_no};
            TermParser tp(ec, out);
            Term lhs = tp.parse_sum();
            ec.skip_ws();
            if (ec.peek() != '=' || ec.pos + 1 >= eq_text.size() || eq_text[ec.pos + 1] != '?')
                ec.fail("expected '=?'");
            ec.pos += 2;
            Term rhs = tp.parse_sum();
            ec.skip_ws();
            if (!ec.done())
                ec.fail("unexpected trailing input");
            out.equations.emplace_back(std::move(lhs), std::move(rhs));
        }
        if (start > text.size())
            break;
    }
    if (!in_problem)
        throw ParseError(line_no, 1, "missing 'problem:' section");
    return out;
}

} // namespace ach
