# numerical tolerances shared across modules
NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
ISOMETRY_TOL = 1e-10

# eigenvalues below this contribute exactly 0 to entropies (0 log 0 := 0)
ENTROPY_CUTOFF = 1e-12
# numerical rank cutoff for logic-qubit compression and purification
RANK_CUTOFF = 1e-9

# measurement branches below this probability are dropped
BRANCH_CUTOFF = 1e-12
# off-X entries below this are treated as zero
XSTATE_TOL = 1e-10
# slack on the X-state sigma_x criterion (equality cases are common)
XSTATE_CRITERION_SLACK = 1e-12

# clip window for negative rounding noise on measures
CLIP_TOL = 1e-9

# measurement optimizer: coarse grid then Nelder-Mead refinement
GRID_THETA = 24
GRID_PHI = 48
REFINE_STARTS = 3
REFINE_FATOL = 1e-10
REFINE_XATOL = 1e-7
REFINE_MAXITER = 4000

# register labels
DEFAULT_LABELS = ["A", "B", "C", "D", "E", "F", "G", "H"]
CAVITY_LABELS = ["c1", "r1", "c2", "r2"]
