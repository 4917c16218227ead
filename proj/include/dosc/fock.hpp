#pragma once

#include <vector>

#include "dosc/types.hpp"

namespace dosc {

struct FockCutoff {
    int n_max = 1;
};

struct ModeOps {
    SpMat lower;
    SpMat raise;
    SpMat number;
};

struct InteriorProjector {
    int depth = 0;
    SpMat matrix;              // diagonal 0/1, full side
    std::vector<int> indices;  // retained basis indices, ascending
};

ModeOps build_mode_ops(FockCutoff cutoff);

// op acting on `mode` (1-based) of spinor (x) mode_1 (x) ... (x) mode_d.
SpMat embed(const SpMat& op, int mode, int d, FockCutoff cutoff, int spinor_dim);
// spin (x) Id on all modes.
SpMat embed_spinor(const Mat& spin, int d, FockCutoff cutoff);

// Total boson occupation of every basis index.
std::vector<int> total_occupation(int d, FockCutoff cutoff, int spinor_dim);

InteriorProjector interior_projector(int depth, int d, FockCutoff cutoff, int spinor_dim);

// Column selector (side x rank) onto occupation <= limit.
SpMat column_selector(const std::vector<int>& occupation, int limit);

// Restrict an operator built with cutoff `big` to the subspace of cutoff `small` (same d, spinor).
SpMat compress(const SpMat& op, int d, FockCutoff big, FockCutoff small, int spinor_dim);

}  // namespace dosc
