#pragma once

#include <cstdint>
#include <vector>

#include "rss/random.hpp"
#include "rss/sample_set.hpp"

namespace rss {

// Independent draws on the hypercube; every record carries weight 1/N
// (exact, rational for composite N).
SampleSet srs(const std::vector<Distribution>& marginals, std::size_t count,
              RandomStream& stream);

// per_stratum[k] uniform draws inside stratum k of the design (in stratum
// order); record weight is p_k / M_k.
SampleSet stratified_sample(const std::vector<Distribution>& marginals,
                            StratifiedDesign design,
                            const std::vector<std::size_t>& per_stratum,
                            RandomStream& stream);

enum class LhsPairing { random, correlation_reduced };

// Latin hypercube of size count >= 2.  Draw order per dimension: bin
// permutation first, then the count in-bin offsets.  correlation_reduced
// applies one Iman-Conover pass (van der Waerden scores, identity target),
// which re-pairs components within columns and preserves the Latin property.
SampleSet lhs(const std::vector<Distribution>& marginals, std::size_t count,
              RandomStream& stream, LhsPairing pairing = LhsPairing::random);

// Appends k_new iid records and rescales every weight to 1/(N+k_new).
SampleSet srs_extend(SampleSet set, std::size_t k_new, RandomStream& stream);

// Refined stratified extension: k_new times, split the maximal-weight stratum
// in half along its longest edge and draw one sample in the empty child.
// Existing records keep their u and x; weights are recomputed as p_k / M_k.
// Tie-breaking consumes integer draws from `stream` in documented order:
// stratum tie (only when tied), then dimension tie (only when tied), then the
// location draws, one per dimension.
SampleSet rss_extend(SampleSet set, std::size_t k_new, RandomStream& stream);

// Canonical starting point for adaptive refinement: a balanced design with
// the largest power-of-two stratum count <= count (divisions assigned by
// greedy halving of the longest edges), one sample per stratum, then RSS
// extensions up to exactly `count` samples.
SampleSet rss_init(const std::vector<Distribution>& marginals, std::size_t count,
                   RandomStream& stream);

// Hierarchical LHS extension: each axis stratum is subdivided into
// refinement+1 children (one holding the original component) and the
// refinement*N empty children are filled and randomly re-paired.  Grows the
// set to N*(refinement+1).
SampleSet hlhs_extend(SampleSet set, unsigned refinement, RandomStream& stream);

// Replicated LHS extension: appends one independent LHS with the original
// stratification; after r extensions from N the set holds N*(r+1) records of
// weight 1/(N*(r+1)).
SampleSet rlh_extend(SampleSet set, RandomStream& stream);

// Power-of-two division counts whose product is `strata` (power of two),
// assigned by repeatedly halving the currently longest edge (ties to the
// lowest dimension index).
std::vector<int> greedy_halving(int dimension, std::uint64_t strata);

// True when every axis holds exactly size/resolution components per
// 1/resolution bin.
bool latin_property_holds(const SampleSet& set, std::size_t resolution);

}  // namespace rss
