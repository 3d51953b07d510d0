from qmonogamy.measures.discord import (
    DiscordResult,
    DiscordRoute,
    MeasurementSetting,
    quantum_discord,
)
from qmonogamy.measures.entanglement import (
    concurrence_pure,
    concurrence_wootters,
    eof_from_csq,
    three_tangle,
)

__all__ = [
    "DiscordResult",
    "DiscordRoute",
    "MeasurementSetting",
    "quantum_discord",
    "concurrence_pure",
    "concurrence_wootters",
    "eof_from_csq",
    "three_tangle",
]
