from qmonogamy.state.families import StateFactory
from qmonogamy.state.state import (
    DensityMatrix,
    LogicQubitMap,
    Partition,
    PureState,
    binary_entropy,
    compress_support,
    partial_trace,
    purify,
    random_pure_haar,
    tensor_product,
    von_neumann_entropy,
)

__all__ = [
    "PureState",
    "DensityMatrix",
    "Partition",
    "LogicQubitMap",
    "StateFactory",
    "tensor_product",
    "partial_trace",
    "von_neumann_entropy",
    "binary_entropy",
    "compress_support",
    "purify",
    "random_pure_haar",
]
