#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "buchi/lang_ops.hpp"
#include "buchi/nbw.hpp"

namespace buchi {

/// SplitMix64 (Steele, Lea, Flood 2014). split() derives an independent
/// stream, so trial i of a batch does not depend on how many numbers
/// earlier trials consumed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
    SplitMix64 split() { return SplitMix64(next()); }

private:
    std::uint64_t state_;
};

enum class Family { general, reverse_deterministic, fanbw_filtered };

Family parse_family(std::string_view name);
std::string_view family_name(Family f);

struct GenConfig {
    std::size_t n = 4;
    std::size_t alphabet_size = 2;
    double transition_density = 1.5;  // expected successors per (state, symbol)
    double accepting_fraction = 0.3;
    std::uint64_t seed = 1;
    Family family = Family::general;
    std::size_t max_retries = 1000;   // fanbw-filtered only
};

/// Symbol names "a", "b", ... for the first 26 symbols, then "s26", "s27", ...
std::vector<std::string> default_alphabet(std::size_t size);

/// Pure function of `cfg`. The result is complete. Throws
/// std::invalid_argument on a bad config and std::runtime_error when the
/// fanbw-filtered family runs out of retries.
Nbw generate(const GenConfig& cfg);

struct MethodStats {
    Method method = Method::kv;
    bool built = false;           // false when skipped or over the state limit
    std::string skipped_reason;
    std::size_t macrostates = 0;
    int max_rank = -1;            // rank methods only
    std::size_t initial_count = 0;  // ncb only
    std::size_t triple_count = 0;   // ncb only
    bool disjoint = false;
};

struct ValidationReport {
    std::size_t num_states = 0;   // of the completed automaton
    bool finitely_ambiguous = false;
    std::size_t lassos = 0;
    std::vector<MethodStats> methods;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Every lasso with 0 <= |stem| <= bound and 1 <= |loop| <= bound, shortest
/// first, then lexicographic.
std::vector<LassoWord> enumerate_lassos(std::size_t alphabet_size, std::size_t bound);

/// Builds each requested complement of complete(a) and checks it against `a`:
/// exact disjointness, exactly-one-of membership on every bounded lasso,
/// agreement between methods, the size and rank bounds, limit determinism
/// of the ncb complement, and the branch and peel bounds of the
/// co-deterministic DAG. Methods that need finite ambiguity are skipped on
/// other inputs.
ValidationReport cross_validate(const Nbw& a, const std::vector<Method>& methods,
                                std::size_t lasso_bound,
                                std::size_t state_limit = kDefaultStateLimit);

/// One JSON object (single line) describing a report.
std::string report_to_json(const ValidationReport& r, const GenConfig* cfg = nullptr);

}  // namespace buchi
