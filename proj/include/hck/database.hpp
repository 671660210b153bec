#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hck {

using Fact = std::vector<std::uint32_t>;

struct Relation {
    std::string name;
    std::size_t arity = 0;
    std::vector<Fact> facts;

    bool contains(const Fact& f) const;
    // Rebuilds the lookup set; call after editing `facts` directly.
    void reindex();
    // Adds a fact; returns false if already present. Throws on arity/range errors.
    bool add(Fact f, std::size_t n);

private:
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index_;
};

struct Database {
    std::size_t n = 0;
    std::vector<Relation> relations;

    const Relation* find(std::string_view name) const;
    Relation* find(std::string_view name);
};

struct Atom {
    std::string relation;
    std::vector<std::size_t> vars;  // variable ids
};

// Self-join-free conjunctive count query. Variables are numbered 0..var_names.size()-1.
struct Query {
    std::string name;
    std::vector<std::size_t> head;
    std::vector<Atom> atoms;
    std::vector<std::string> var_names;

    std::size_t var_count() const { return var_names.size(); }
    // Variables that occur in the head but in no atom.
    std::vector<std::size_t> head_only() const;
    // Throws InvariantError on a self-join, too many atoms, or an unknown relation/arity
    // mismatch against `db` when given.
    void validate(const Database* db = nullptr) const;
};

constexpr std::size_t kMaxAtoms = 6;
constexpr std::size_t kMaxArity = 4;

// DB 1 n=<n>
// rel <name> arity=<r>
// f <v1> ... <vr>
Database parse_database(std::string_view text);
std::string serialize(const Database& db);

// Q <name>(<vars>) <- R1(<vars>); R2(<vars>); ...
Query parse_query(std::string_view text);
std::string serialize(const Query& q);

}  // namespace hck
