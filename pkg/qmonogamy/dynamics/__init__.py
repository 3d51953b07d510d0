from qmonogamy.dynamics.cavity import DampingParams, output_state
from qmonogamy.dynamics.sweep import SweepSpec, SweepTable, run_sweep

__all__ = ["DampingParams", "output_state", "SweepSpec", "SweepTable", "run_sweep"]
