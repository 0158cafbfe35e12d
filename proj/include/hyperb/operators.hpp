#pragma once

#include "hyperb/measures.hpp"
#include "hyperb/rips.hpp"

namespace hyperb {

// Sparse rational matrix stored by columns.
struct SpMat {
    int rows = 0;
    int cols = 0;
    std::vector<std::map<int, Rat>> col;

    static SpMat zero(int r, int c) { return {r, c, std::vector<std::map<int, Rat>>(c)}; }
    static SpMat identity(int n);
    void add(int r, int c, const Rat& q);
    bool zero_matrix() const;
};

SpMat mat_add(const SpMat& a, const SpMat& b);
SpMat mat_sub(const SpMat& a, const SpMat& b);
SpMat mat_mul(const SpMat& a, const SpMat& b);  // a * b
SpMat mat_scale(const SpMat& a, const Rat& q);
SpMat mat_abs(const SpMat& a);
bool mat_equal(const SpMat& a, const SpMat& b);

// Degree-homogeneous linear map on the graded chain space; block[p] maps
// degree p to degree p+shift. Degrees run 0..p_max.
struct GradedOp {
    const RipsComplex* rips = nullptr;
    int shift = 0;
    std::vector<SpMat> block;  // indexed by source degree

    const SpMat& at(int p) const { return block[p]; }
    bool zero() const;
};

GradedOp zero_op(const RipsComplex& rips, int shift);
GradedOp identity_op(const RipsComplex& rips);
GradedOp boundary_op(const RipsComplex& rips);
GradedOp op_add(const GradedOp& a, const GradedOp& b);
GradedOp op_sub(const GradedOp& a, const GradedOp& b);
GradedOp op_mul(const GradedOp& a, const GradedOp& b);  // a after b
GradedOp op_scale(const GradedOp& a, const Rat& q);
GradedOp op_abs(const GradedOp& a);
bool op_equal(const GradedOp& a, const GradedOp& b);

Chain apply(const GradedOp& op, const Chain& f);

// wedge with a rational vertex measure: m ^ e_S, extended linearly
Chain wedge_measure(const RipsComplex& rips, const Measure& m, const Chain& f);
// left contraction phi -| e_S with a vertex weight vector
Chain contract_weights(const RipsComplex& rips, const Measure& m, const Chain& f);

// builds the graded operator whose column at e_S is column_fn(p, idx)
GradedOp build_graded(const RipsComplex& rips, int shift,
                      const std::function<Chain(int, int)>& column_fn);

}  // namespace hyperb
