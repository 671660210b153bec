#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hck/avgcase.hpp"
#include "hck/database.hpp"
#include "hck/field.hpp"
#include "hck/generate.hpp"
#include "hck/pattern.hpp"

namespace hck {

struct RelationSchema {
    std::string name;
    std::size_t arity = 0;
};

// Every one of the n^r candidate facts of relation i independently with probability mus[i].
Database gen_random_db(const std::vector<RelationSchema>& schemas, std::size_t n, const std::vector<double>& mus,
                       std::uint64_t seed);

// One variable group per atom, indexed by the fact tuple in base n (first position most
// significant). The modulus covers n^(atom variables).
struct ScqDescriptor {
    Query q;
    std::size_t n = 0;
    std::vector<std::size_t> arity;         // per atom
    std::vector<std::size_t> offset;        // first variable of each group
    std::size_t variables = 0;
    std::vector<std::size_t> atom_vars;     // distinct variables occurring in atoms
    std::size_t head_only = 0;
    PrimeModulus modulus;

    std::size_t degree() const { return q.atoms.size(); }
    std::size_t group_size(std::size_t j) const { return offset[j + 1] - offset[j]; }
};

ScqDescriptor make_scq(const Database& db, const Query& q);
// Explicit modulus; must exceed the largest possible count.
ScqDescriptor make_scq(const Database& db, const Query& q, std::uint64_t p);

std::vector<std::uint64_t> scq_indicator(const ScqDescriptor& desc, const Database& db);
// Database holding only the query's relations, facts read off a 0/1 vector.
Database scq_database(const ScqDescriptor& desc, std::span<const std::uint64_t> x);

std::uint64_t eval_scq_polynomial(const ScqDescriptor& desc, std::span<const std::uint64_t> x,
                                  const MonomialHook* hook = nullptr);
std::uint64_t eval_scq_polynomial(const Database& db, const Query& q);

using UscqOracle = std::function<std::uint64_t(const Database& db, const Query& q)>;

UscqOracle make_brute_uscq_oracle();
// Wrong value in [0, 2^32) with probability `rate` per call.
UscqOracle make_corrupt_uscq_oracle(UscqOracle inner, double rate, std::uint64_t seed);

// Worst-case SCQ count through the corrector, fact indicators of each atom's relation as
// one group, domain permutations as symmetries.
CorrectorResult scq_via_uscq(const Database& db, const Query& q, const UscqOracle& oracle, double delta_fail,
                             std::uint64_t seed, double mu = 0.5);

// Query with one atom R<j+1> per pattern edge, variables named after the pattern
// vertices (A, B, ...) in increasing order.
Query pattern_query(const PatternGraph& h);
// Relation R<j+1> is the symmetric closure of the edges of g on slot j of h.
Database pattern_database(const PartiteGraph& g, const PatternGraph& h);

}  // namespace hck
