#pragma once

#include <map>
#include <string>

#include "hyperb/graph.hpp"

namespace hyperb {

struct LemmaReport {
    std::string id;
    long instances = 0;   // tuples whose hypotheses held
    long violations = 0;
    bool exhaustive = false;
    std::map<std::string, double> constants;
    std::string first_witness;
    std::vector<std::string> witnesses;  // first few counterexample tuples
};

struct SuiteReport {
    std::vector<LemmaReport> lemmas;
    bool ok() const {
        for (auto& l : lemmas)
            if (l.violations) return false;
        return true;
    }
};

// Property checks for the pure-geometry facts the construction leans on.
// Exhaustive when the instance space is below the threshold, otherwise
// seed-deterministic sampling with the given budget.
SuiteReport geometry_lemma_suite(const DistanceGraph& g, long sample_budget, unsigned long seed,
                                 long exhaustive_threshold = 10000000);

}  // namespace hyperb
