#include "hyperb/operators.hpp"

namespace hyperb {

SpMat SpMat::identity(int n) {
    SpMat m = zero(n, n);
    for (int i = 0; i < n; ++i) m.col[i][i] = 1;
    return m;
}

void SpMat::add(int r, int c, const Rat& q) {
    if (q == 0) return;
    auto [it, fresh] = col[c].emplace(r, q);
    if (!fresh) {
        it->second += q;
        if (it->second == 0) col[c].erase(it);
    }
}

bool SpMat::zero_matrix() const {
    for (auto& c : col)
        if (!c.empty()) return false;
    return true;
}

SpMat mat_add(const SpMat& a, const SpMat& b) {
    SpMat out = a;
    for (int j = 0; j < b.cols; ++j)
        for (auto& [r, q] : b.col[j]) out.add(r, j, q);
    return out;
}

SpMat mat_sub(const SpMat& a, const SpMat& b) {
    SpMat out = a;
    for (int j = 0; j < b.cols; ++j)
        for (auto& [r, q] : b.col[j]) out.add(r, j, -q);
    return out;
}

SpMat mat_mul(const SpMat& a, const SpMat& b) {
    if (a.cols != b.rows) throw std::logic_error("matrix shape mismatch");
    SpMat out = SpMat::zero(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j)
        for (auto& [i, q] : b.col[j])
            for (auto& [r, v] : a.col[i]) out.add(r, j, q * v);
    return out;
}

SpMat mat_scale(const SpMat& a, const Rat& q) {
    SpMat out = a;
    for (auto& c : out.col)
        for (auto& [r, v] : c) v *= q;
    if (q == 0)
        for (auto& c : out.col) c.clear();
    return out;
}

SpMat mat_abs(const SpMat& a) {
    SpMat out = a;
    for (auto& c : out.col)
        for (auto& [r, v] : c)
            if (v < 0) v = -v;
    return out;
}

bool mat_equal(const SpMat& a, const SpMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
}

bool GradedOp::zero() const {
    for (auto& m : block)
        if (!m.zero_matrix()) return false;
    return true;
}

GradedOp zero_op(const RipsComplex& rips, int shift) {
    GradedOp op;
    op.rips = &rips;
    op.shift = shift;
    for (int p = 0; p <= rips.p_max(); ++p)
        op.block.push_back(SpMat::zero(rips.dim(p + shift), rips.dim(p)));
    return op;
}

GradedOp identity_op(const RipsComplex& rips) {
    GradedOp op;
    op.rips = &rips;
    op.shift = 0;
    for (int p = 0; p <= rips.p_max(); ++p) op.block.push_back(SpMat::identity(rips.dim(p)));
    return op;
}

GradedOp boundary_op(const RipsComplex& rips) {
    GradedOp op = zero_op(rips, -1);
    for (int p = 1; p <= rips.p_max(); ++p)
        for (int i = 0; i < rips.dim(p); ++i) {
            Chain b = boundary(rips, chain_basis(p, i));
            for (auto& [r, q] : b.coef) op.block[p].add(r, i, q);
        }
    return op;
}

GradedOp op_add(const GradedOp& a, const GradedOp& b) {
    if (a.shift != b.shift) throw std::logic_error("graded shift mismatch");
    GradedOp out = a;
    for (size_t p = 0; p < out.block.size(); ++p) out.block[p] = mat_add(out.block[p], b.block[p]);
    return out;
}

GradedOp op_sub(const GradedOp& a, const GradedOp& b) {
    if (a.shift != b.shift) throw std::logic_error("graded shift mismatch");
    GradedOp out = a;
    for (size_t p = 0; p < out.block.size(); ++p) out.block[p] = mat_sub(out.block[p], b.block[p]);
    return out;
}

GradedOp op_mul(const GradedOp& a, const GradedOp& b) {
    GradedOp out;
    out.rips = b.rips;
    out.shift = a.shift + b.shift;
    const RipsComplex& rc = *b.rips;
    int pm = rc.p_max();
    for (int p = 0; p <= pm; ++p) {
        int mid = p + b.shift;
        if (mid >= 0 && mid <= pm)
            out.block.push_back(mat_mul(a.block[mid], b.block[p]));
        else
            out.block.push_back(SpMat::zero(rc.dim(p + out.shift), rc.dim(p)));
    }
    return out;
}

GradedOp op_scale(const GradedOp& a, const Rat& q) {
    GradedOp out = a;
    for (auto& m : out.block) m = mat_scale(m, q);
    return out;
}

GradedOp op_abs(const GradedOp& a) {
    GradedOp out = a;
    for (auto& m : out.block) m = mat_abs(m);
    return out;
}

bool op_equal(const GradedOp& a, const GradedOp& b) {
    if (a.shift != b.shift || a.block.size() != b.block.size()) return false;
    for (size_t p = 0; p < a.block.size(); ++p)
        if (!mat_equal(a.block[p], b.block[p])) return false;
    return true;
}

Chain apply(const GradedOp& op, const Chain& f) {
    Chain out;
    out.p = f.p + op.shift;
    if (f.p < 0 || f.p >= static_cast<int>(op.block.size())) return out;
    const SpMat& m = op.block[f.p];
    for (auto& [j, q] : f.coef)
        for (auto& [r, v] : m.col[j]) out.add(r, q * v);
    return out;
}

Chain wedge_measure(const RipsComplex& rips, const Measure& m, const Chain& f) {
    Chain out;
    out.p = f.p + 1;
    for (auto& [idx, q] : f.coef)
        for (auto& [v, w] : m) {
            Chain piece = wedge_vertex(rips, v, f.p, idx);
            piece *= q * w;
            out += piece;
        }
    return out;
}

Chain contract_weights(const RipsComplex& rips, const Measure& m, const Chain& f) {
    Chain out;
    out.p = f.p - 1;
    for (auto& [idx, q] : f.coef) {
        const Simplex& s = rips.simplex(f.p, idx);
        for (size_t i = 0; i < s.size(); ++i) {
            auto it = m.find(s[i]);
            if (it == m.end()) continue;
            if (f.p == 1) {
                out.add(0, q * it->second);
                continue;
            }
            Simplex face;
            face.reserve(s.size() - 1);
            for (size_t j = 0; j < s.size(); ++j)
                if (j != i) face.push_back(s[j]);
            int fi = rips.index_of(f.p - 1, face);
            if (fi < 0) throw std::logic_error("contraction face missing");
            out.add(fi, (i % 2 == 0) ? Rat(q * it->second) : Rat(-q * it->second));
        }
    }
    return out;
}

GradedOp build_graded(const RipsComplex& rips, int shift,
                      const std::function<Chain(int, int)>& column_fn) {
    GradedOp op = zero_op(rips, shift);
    for (int p = 0; p <= rips.p_max(); ++p) {
        if (p + shift < 0 || p + shift > rips.p_max()) continue;
        for (int i = 0; i < rips.dim(p); ++i) {
            Chain c = column_fn(p, i);
            for (auto& [r, q] : c.coef) op.block[p].add(r, i, q);
        }
    }
    return op;
}

}  // namespace hyperb
