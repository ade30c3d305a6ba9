#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mtphi/archimedean.hpp"
#include "mtphi/filmod.hpp"
#include "mtphi/grading.hpp"

namespace mtphi {

/// Deterministic generators for randomized self checks.  std::mt19937_64
/// output is pinned by the standard while the standard distributions are
/// not, so every draw goes through the helpers below and a seed
/// reproduces the same objects on any platform.
using Rng = std::mt19937_64;

long draw_long(Rng& rng, long lo, long hi);
/// Uniform in [-1, 1] from the top 53 bits of one draw.
double draw_real(Rng& rng);

Scalar random_unit(Rng& rng, const LocalField& k);
/// Nonzero element with pi-valuation in [-2, 2].
Scalar random_q(Rng& rng, const LocalField& k);

CEtaObject random_ceta(Rng& rng, const LocalField& k, int max_dim = 6);

/// Mixed Tate module assembled from Tate and Kummer pieces by direct sum
/// and twist, then re-coordinatized by integer shears.  with_monodromy
/// forces a Kummer piece on a non-unit, so the result has N != 0.
FilPhiNModule random_mixed_tate(Rng& rng, const LocalField& k, bool with_monodromy = false);

/// Valid real structure with the given Hodge block dimensions (block b
/// sits in weight -2b) over a random ambient basis with entries in [-1, 1].
RealMTHS random_mths(Rng& rng, const std::vector<int>& block_dims);

struct CorpusLine {
  std::string name;
  int passed = 0;
  int total = 0;
};

struct CorpusReport {
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<CorpusLine> lines;
  bool ok() const;
};

/// Generates count random C_eta objects from seed, pushes each through
/// phi_inv and checks the invariant suite against the round trip; the
/// report carries one line per invariant.
CorpusReport run_corpus(std::uint64_t seed, int count);
std::string dump_corpus(const CorpusReport& r);

}  // namespace mtphi
