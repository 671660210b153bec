#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hck/field.hpp"
#include "hck/generate.hpp"
#include "hck/hypergraph.hpp"
#include "hck/pattern.hpp"

namespace hck {

// polynomial for #H

// Variables are grouped by slot (one group per pattern edge); inside a group the
// candidate edges are indexed in mixed radix over the slot's partitions, lowest
// partition most significant, by position inside the partition's vertex list.
struct GldpDescriptor {
    PatternGraph h;
    CircleLayout layout;
    PrimeModulus modulus;
    std::vector<std::size_t> offset;  // first variable of each group
    std::size_t variables = 0;

    std::size_t degree() const { return h.edge_count(); }
    std::size_t group_size(std::size_t j) const { return offset[j + 1] - offset[j]; }
};

// Needs equal partition sizes n >= 2 (or an explicit modulus via the second form).
GldpDescriptor make_gldp(const PatternGraph& h, const CircleLayout& layout);
GldpDescriptor make_gldp(const PatternGraph& h, const CircleLayout& layout, PrimeModulus modulus);

// 0/1 indicator of the edges of g on the pattern's slots.
std::vector<std::uint64_t> gldp_indicator(const GldpDescriptor& desc, const Hypergraph& g);
// Inverse of gldp_indicator on 0/1 vectors.
Hypergraph gldp_graph(const GldpDescriptor& desc, std::span<const std::uint64_t> x);

// Called once per monomial with the variable index chosen in every group.
using MonomialHook = std::function<void(std::span<const std::size_t>)>;

std::uint64_t eval_gldp(const GldpDescriptor& desc, std::span<const std::uint64_t> x,
                        const MonomialHook* hook = nullptr);

// worst-case to average-case corrector

using Groups = std::vector<std::vector<std::uint8_t>>;

// A polynomial f that is linear in each variable group and has exactly one variable
// per group in every monomial, plus an average-case oracle for the count behind f.
struct CorrectorProblem {
    std::vector<std::size_t> group_sizes;
    std::uint64_t p = 0;
    double mu = 0.5;
    // Random per-group variable permutations under which f is invariant.
    std::function<std::vector<std::vector<std::size_t>>(Rng&)> symmetry;
    // Raw count on a 0/1 input. May throw; the repetition is then discarded.
    std::function<std::uint64_t(const Groups&)> oracle;
};

struct CorrectorOptions {
    double delta_fail = 0.05;
    std::uint64_t seed = 0;
    std::size_t max_repetitions = 0;     // 0: ceil(8 ln(1/delta)) + 2
    std::vector<Groups>* query_log = nullptr;
};

struct CorrectorResult {
    std::optional<std::uint64_t> value;
    bool control_ok = false;
    std::size_t repetitions = 0;
    std::size_t queries = 0;
    std::size_t failed_repetitions = 0;
    std::string failure;
};

// Every repetition relabels by a random symmetry, redraws each group as
// U = x | r and W = r & ~x with fresh r ~ Bern(mu), and combines the 2^d oracle answers
// sum_S (-1)^(d-|S|) F(U on S, W off S) mod p. Values take a plurality vote with a
// quorum of two. The same procedure must first reproduce `control_value` on `control`.
CorrectorResult correct_polynomial(const CorrectorProblem& problem, const Groups& target, const Groups& control,
                                   std::uint64_t control_value, const CorrectorOptions& opt);

// U#H oracle: identity-labeled copies of h in an h-partite graph.
using UhOracle = std::function<std::uint64_t(const PatternGraph& h, const PartiteGraph& g)>;

// #H of an h-partite worst-case instance (0/1 vector over desc's variables) through
// an average-case U#H oracle at edge density mu.
CorrectorResult correct_worst_case(const GldpDescriptor& desc, std::span<const std::uint64_t> instance,
                                   const UhOracle& avg_oracle, double mu, const CorrectorOptions& opt);

class CorrectorFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// S_G family

struct SGFamily {
    std::size_t b = 2;
    std::vector<Mask> slots;
    PartiteGraph base;
    std::vector<std::vector<Edge>> candidates;           // per slot
    std::vector<std::vector<std::uint8_t>> labels;       // per slot, per candidate, in [1, b]

    std::uint64_t member_count() const;
    // Label vector of member `index` (mixed radix base b, first slot most significant).
    std::vector<std::uint8_t> member_labels(std::uint64_t index) const;
};

SGFamily build_sg(const PartiteGraph& g, std::vector<Mask> slots, std::size_t b, std::uint64_t seed);
PartiteGraph sg_member(const SGFamily& fam, std::span<const std::uint8_t> ell);

// labeled counts

// Fragment of h: label set T and a subset F of h's edges (bit i = h.edges()[i]).
struct FragmentKey {
    Mask labels = 0;
    std::uint32_t edges = 0;
    auto operator<=>(const FragmentKey&) const = default;
};

struct LabeledCountTable {
    std::map<FragmentKey, std::uint64_t> entries;

    std::optional<std::uint64_t> find(FragmentKey key) const;
    // Stored entry, or for |F| >= 2 with fewer labels, the full-label entry divided by
    // the free partitions (throws if that does not divide).
    std::uint64_t lookup(FragmentKey key, const PatternGraph& h, std::size_t n) const;
};

// Every fragment with at most one edge, for every label set containing it.
void count_base_cases(const PartiteGraph& g, const PatternGraph& h, LabeledCountTable& table);

// Inputs of the inclusion identity shared across fragments.
struct InclusionContext {
    PatternGraph h;
    std::vector<Mask> family_slots;  // S, a superset of h's slots
    std::size_t b = 2;
    std::size_t n = 0;               // partition size

    // #{sigma : sigma(E_H) subset of S, sigma(E_H) cap F = L'} / |Aut(H)|, with F, L' as
    // edge bitsets of h.
    std::uint64_t c_g(std::uint32_t f, std::uint32_t lp) const;

    InclusionContext(PatternGraph h, std::vector<Mask> family_slots, std::size_t b, std::size_t n);

private:
    std::vector<std::vector<Mask>> images_;  // sigma(E_H) for every sigma with image inside S
    std::size_t aut_ = 1;
};

// Sum of member counts over members labeled 1 on every slot of F.
std::uint64_t sg_label_one_sum(const SGFamily& fam, std::span<const std::uint64_t> member_counts,
                               const std::vector<Mask>& f_slots);

// Right-hand side coefficient sum of the identity for a known table, i.e. the value
// c_{S_G[L]} predicted from the labeled counts c_{(T, L')} over L' subset of F.
__int128 inclusion_rhs(const InclusionContext& ctx, FragmentKey key,
                       const std::function<std::uint64_t(FragmentKey)>& c);

// Solves the identity for c_{(T, F)} given c_{S_G[L]} and all strict sub-fragments.
// Throws InvariantError if the solution is not a nonnegative integer.
std::uint64_t inclusion_step(const InclusionContext& ctx, FragmentKey key, const LabeledCountTable& table,
                             std::uint64_t c_sg);

// Counts distinct one-vertex-per-partition copies of h in a k-partite graph.
using KpartiteCounter = std::function<std::uint64_t(const PatternGraph& h, const PartiteGraph& g)>;

struct LabeledCountsResult {
    LabeledCountTable table;
    std::vector<std::uint64_t> member_counts;
    std::size_t calls = 0;
    std::uint64_t full = 0;  // c for all labels and all edges: the #H count
};

// Counter on every S_G member, base cases, then fragments with two or more edges (all
// labels) in increasing edge count.
LabeledCountsResult count_labeled_via_er(const PartiteGraph& g, const PatternGraph& h, const KpartiteCounter& counter,
                                         std::size_t b, std::uint64_t seed);

// ER oracle and k-partite via ER

// Copies of h in the subgraph of g induced by the kept vertices.
using ErOracle = std::function<std::uint64_t(const PatternGraph& h, const Hypergraph& g, const std::vector<bool>& keep)>;

// Exhaustive embedding search; caches the embeddings of the most recent graph.
ErOracle make_brute_er_oracle();
// Returns a uniformly random wrong value in [0, 2^32) on each call with probability `rate`.
ErOracle make_corrupt_er_oracle(ErOracle inner, double rate, std::uint64_t seed);

struct KpartiteResult {
    std::uint64_t count = 0;  // alternating sum, reduced mod 2^64
    std::size_t calls = 0;
};

// Adds each missing candidate edge of the pattern's sizes that has two vertices in one
// partition with probability 1/b, then inclusion-exclusion over partition subsets.
KpartiteResult kpartite_from_er(const PartiteGraph& g, const PatternGraph& h, const ErOracle& er, std::size_t b,
                                std::uint64_t seed);

struct PipelineStats {
    std::size_t hk_calls = 0;
    std::size_t uh_queries = 0;
    std::size_t kpartite_calls = 0;
    std::size_t kpartite_attempts = 0;
    std::size_t er_calls = 0;
};

struct PipelineResult {
    std::optional<std::uint64_t> count;
    std::string failure;
    PipelineStats stats;
};

// #HK through #H, U#H, labeled counts and k-partite counts down to the ER oracle.
// Each k-partite count is repeated with fresh random cross edges until `kp_quorum`
// attempts agree (at most kMaxKpAttempts); 1 takes the first answer.
constexpr std::size_t kMaxKpAttempts = 9;
PipelineResult wc2ac_pipeline(const PartiteGraph& g, const PatternGraph& h, const ErOracle& er, std::size_t b,
                              double delta_fail, std::uint64_t seed, std::size_t kp_quorum = 2);

}  // namespace hck
