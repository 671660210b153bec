#include "hck/database.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "hck/errors.hpp"

namespace hck {

namespace {

std::uint64_t fact_hash(const Fact& f) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ f.size();
    for (auto v : f) h = (h ^ v) * 0x100000001b3ULL;
    return h;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto at = s.find(sep, pos);
        out.push_back(s.substr(pos, at == std::string_view::npos ? std::string_view::npos : at - pos));
        if (at == std::string_view::npos) break;
        pos = at + 1;
    }
    return out;
}

template <class T>
bool parse_int(std::string_view s, T& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

}  // namespace

bool Relation::contains(const Fact& f) const {
    auto it = index_.find(fact_hash(f));
    if (it == index_.end()) return false;
    for (auto i : it->second)
        if (facts[i] == f) return true;
    return false;
}

void Relation::reindex() {
    index_.clear();
    for (std::uint32_t i = 0; i < facts.size(); ++i) index_[fact_hash(facts[i])].push_back(i);
}

bool Relation::add(Fact f, std::size_t n) {
    if (f.size() != arity) throw std::invalid_argument("fact arity mismatch in " + name);
    for (auto v : f)
        if (v >= n) throw std::invalid_argument("fact entry out of range in " + name);
    if (contains(f)) return false;
    index_[fact_hash(f)].push_back(static_cast<std::uint32_t>(facts.size()));
    facts.push_back(std::move(f));
    return true;
}

const Relation* Database::find(std::string_view name) const {
    for (const auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

Relation* Database::find(std::string_view name) {
    for (auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

std::vector<std::size_t> Query::head_only() const {
    std::vector<bool> used(var_count(), false);
    for (const auto& a : atoms)
        for (auto v : a.vars) used[v] = true;
    std::vector<std::size_t> out;
    for (auto v : head)
        if (!used[v] && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

void Query::validate(const Database* db) const {
    require(!atoms.empty(), "query needs at least one atom");
    require(atoms.size() <= kMaxAtoms, "query has more than 6 atoms");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if (atoms[i].relation == atoms[j].relation) throw InvariantError("self-join on relation " + atoms[i].relation);
        require(!atoms[i].vars.empty() && atoms[i].vars.size() <= kMaxArity, "atom arity must be in [1, 4]");
        for (auto v : atoms[i].vars) require(v < var_count(), "atom variable id out of range");
    }
    for (auto v : head) require(v < var_count(), "head variable id out of range");
    if (db) {
        for (const auto& a : atoms) {
            const Relation* r = db->find(a.relation);
            if (!r) throw InvariantError("unknown relation " + a.relation);
            if (r->arity != a.vars.size()) throw InvariantError("arity mismatch for " + a.relation);
        }
    }
}

Database parse_database(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw ParseError(ParseErrc::malformed_header, 1, "empty input");
    Database db;
    {
        auto t = split(lines[0], ' ');
        if (t.size() != 3 || t[0] != "DB" || t[1] != "1" || t[2].substr(0, 2) != "n=" ||
            !parse_int(t[2].substr(2), db.n))
            throw ParseError(ParseErrc::malformed_header, 1, "expected 'DB 1 n=<n>'");
    }
    Relation* cur = nullptr;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        auto t = split(lines[li], ' ');
        if (t[0] == "rel") {
            std::size_t r = 0;
            if (t.size() != 3 || !valid_name(t[1]) || t[2].substr(0, 6) != "arity=" || !parse_int(t[2].substr(6), r) ||
                r == 0 || r > kMaxArity)
                throw ParseError(ParseErrc::malformed_line, line_no, "expected 'rel <name> arity=<r>'");
            if (db.find(t[1])) throw ParseError(ParseErrc::duplicate_edge, line_no, "duplicate relation");
            Relation rel;
            rel.name = std::string(t[1]);
            rel.arity = r;
            db.relations.push_back(std::move(rel));
            cur = &db.relations.back();
        } else if (t[0] == "f") {
            if (!cur) throw ParseError(ParseErrc::malformed_line, line_no, "fact before any relation");
            if (t.size() != cur->arity + 1)
                throw ParseError(ParseErrc::size_not_in_profile, line_no, "fact arity mismatch");
            Fact f;
            for (std::size_t i = 1; i < t.size(); ++i) {
                std::uint32_t v = 0;
                if (!parse_int(t[i], v)) throw ParseError(ParseErrc::malformed_line, line_no, "bad fact entry");
                if (v >= db.n) throw ParseError(ParseErrc::vertex_out_of_range, line_no, "fact entry out of range");
                f.push_back(v);
            }
            if (!cur->add(std::move(f), db.n)) throw ParseError(ParseErrc::duplicate_edge, line_no, "duplicate fact");
        } else {
            throw ParseError(ParseErrc::malformed_line, line_no, "unknown line");
        }
    }
    return db;
}

std::string serialize(const Database& db) {
    std::ostringstream os;
    os << "DB 1 n=" << db.n << '\n';
    for (const auto& r : db.relations) {
        os << "rel " << r.name << " arity=" << r.arity << '\n';
        auto facts = r.facts;
        std::sort(facts.begin(), facts.end());
        for (const auto& f : facts) {
            os << 'f';
            for (auto v : f) os << ' ' << v;
            os << '\n';
        }
    }
    return os.str();
}

Query parse_query(std::string_view text) {
    auto bad = [](const std::string& what) { return ParseError(ParseErrc::malformed_line, 1, what); };
    text = trim(text);
    while (!text.empty() && (text.back() == '\n' || text.back() == ';')) text.remove_suffix(1);
    if (text.substr(0, 2) != "Q ") throw ParseError(ParseErrc::malformed_header, 1, "query must start with 'Q '");
    text.remove_prefix(2);
    const auto arrow = text.find("<-");
    if (arrow == std::string_view::npos) throw bad("missing '<-'");
    Query q;
    auto var_id = [&](std::string_view name) {
        name = trim(name);
        if (!valid_name(name)) throw bad("bad variable name");
        for (std::size_t i = 0; i < q.var_names.size(); ++i)
            if (q.var_names[i] == name) return i;
        q.var_names.emplace_back(name);
        return q.var_names.size() - 1;
    };
    // name(v1,v2,...) -> (name, vars)
    auto parse_term = [&](std::string_view s) {
        s = trim(s);
        const auto open = s.find('(');
        if (open == std::string_view::npos || s.back() != ')') throw bad("expected name(vars)");
        std::string name(trim(s.substr(0, open)));
        if (!valid_name(name)) throw bad("bad relation name");
        std::vector<std::size_t> vars;
        auto inner = trim(s.substr(open + 1, s.size() - open - 2));
        if (!inner.empty())
            for (auto v : split(inner, ',')) vars.push_back(var_id(v));
        return std::make_pair(name, vars);
    };
    auto [qname, head] = parse_term(text.substr(0, arrow));
    q.name = qname;
    q.head = head;
    for (auto part : split(text.substr(arrow + 2), ';')) {
        if (trim(part).empty()) continue;
        auto [rname, vars] = parse_term(part);
        if (vars.empty()) throw bad("atoms need at least one variable");
        q.atoms.push_back(Atom{rname, vars});
    }
    try {
        q.validate();
    } catch (const InvariantError& e) {
        throw bad(e.what());
    }
    return q;
}

std::string serialize(const Query& q) {
    std::ostringstream os;
    auto vars = [&](const std::vector<std::size_t>& vs) {
        for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << q.var_names[vs[i]];
    };
    os << "Q " << q.name << '(';
    vars(q.head);
    os << ") <- ";
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
        os << (i ? "; " : "") << q.atoms[i].relation << '(';
        vars(q.atoms[i].vars);
        os << ')';
    }
    return os.str();
}

}  // namespace hck
