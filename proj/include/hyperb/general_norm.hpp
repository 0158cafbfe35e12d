#pragma once

#include "hyperb/parametrix.hpp"

namespace hyperb {

struct NormCaps {
    int k_max = -1;        // -1: use the graph diameter
    int m_max = 3;
    int l_total_max = 4;
    int region_cap = 14;   // subset enumeration refuses larger regions
    long cell_budget = 2000000;  // max tuples per (k,m,l) cell
};

struct NormTuple {
    std::vector<Vertex> a;                   // ordered (a_1..a_p)
    std::vector<VertexSet> S;                // S_0..S_m
    std::vector<std::vector<VertexSet>> Y;   // Y[i][j]
    int k = 0;
};

struct TupleClass {
    std::vector<NormTuple> members;
    int r0 = 0;
    std::vector<int> r;  // r_i
    std::vector<int> s;  // s_i (s_m may be <= 0 when m == 0)
};

struct EnumCell {
    int k = 0, m = 0;
    std::vector<int> l;
    std::vector<TupleClass> classes;
    long tuple_count = 0;
};

struct EnumResult {
    std::vector<EnumCell> cells;
    bool overflow = false;
    bool frontier = false;  // tuples found at the caps: deeper cells may exist
    std::vector<std::string> notes;
};

// all tuples and classes for one k (every admissible m and l vector under the caps)
EnumResult enumerate_norm_tuples(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                                 int p, int k, const NormCaps& caps);

// role-respecting isometry fixing the base ball pointwise
bool tuples_equivalent(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                       const NormTuple& t1, const NormTuple& t2);
bool tuples_equivalent_bruteforce(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                                  const NormTuple& t1, const NormTuple& t2);

struct NormResult {
    double value = 0;
    double tail_k = 0;      // closed-form tail over the large-k sector
    double tail_ml = 0;     // geometric over-estimate of skipped cells
    double lower_bound = 0; // p! (1-e^{-2s})^{-1} |f|^2_{l2}
    bool overflow = false;
    std::vector<std::string> notes;
    double total() const { return value + tail_k; }
};

NormResult general_norm(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                        const Chain& f, const NormCaps& caps);

struct EquivReport {
    double norm_x = 0, norm_x2 = 0;
    double log_ratio = 0;
    double excess = 0;  // log_ratio - 2 s d(x,x')
};

EquivReport equivariance_ratio(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                               Vertex x2, const Chain& f, const NormCaps& caps);

// structural consequences on every enumerated tuple
std::vector<std::string> tuple_consequence_violations(const RipsComplex& rips,
                                                      const ParameterSet& par, Vertex x,
                                                      const EnumResult& er);

}  // namespace hyperb
