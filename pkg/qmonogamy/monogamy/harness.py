"""
Randomized checks over Haar-random states: the SQD monogamy harness and the
discord route-agreement self test.
"""

import math
from typing import List

import numpy as np
from pydantic.v1 import BaseModel

from qmonogamy.constants import CLIP_TOL
from qmonogamy.dynamics.cavity import DampingParams, output_state
from qmonogamy.measures.discord import (
    DiscordResult,
    is_xstate,
    quantum_discord,
    xstate_criterion,
)
from qmonogamy.measures.entanglement import ckw_residual
from qmonogamy.monogamy.indicators import sqd_decomposition
from qmonogamy.state.state import partial_trace, random_pure_haar
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)

SIGN_FLOOR = 1e-8


class MonogamyCheck(BaseModel):
    """Summary of the SQD monogamy harness over random pure states"""

    samples: int
    seed: int
    min_distribution: float
    min_t1: float
    min_t2: float
    min_ckw_margin: float
    min_t2_prime: float
    """min |E_f(AC) - E_f(AB)| - |S(A|B)|"""
    same_sign_violations: int
    corollary_violations: int
    """Samples breaking S(B) - E_f(AB) >= S(C) - E_f(AC) when E_f(AC) >= E_f(AB)"""
    worst_sample: int
    """Index of the sample with the smallest distribution"""

    @property
    def passed(self) -> bool:
        floor = -CLIP_TOL
        return (
            min(
                self.min_distribution,
                self.min_t1,
                self.min_t2,
                self.min_ckw_margin,
                self.min_t2_prime,
            )
            >= floor
            and self.same_sign_violations == 0
            and self.corollary_violations == 0
        )


def _children(seed: int, count: int) -> List[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)


def _balance_gap(result: DiscordResult) -> float:
    return abs(result.discord + result.classical - result.mutual)


def run_monogamy_check(samples: int, seed: int, pivot: int = 0) -> MonogamyCheck:
    """Evaluate the SQD decomposition on ``samples`` Haar-random 3-qubit states.

    Each sample draws from its own child of ``SeedSequence(seed)`` so the
    run is reproducible and independent of evaluation order.

    Raises:
        ValueError: If samples < 1.
    """
    if samples < 1:
        raise ValueError("Need at least one sample")
    minima = dict.fromkeys(["distribution", "t1", "t2", "ckw", "t2_prime"], math.inf)
    same_sign = corollary = 0
    worst = 0
    for index, child in enumerate(_children(seed, samples)):
        psi = random_pure_haar(3, child)
        report = sqd_decomposition(psi, pivot)
        a, b, c = (report.partition.blocks[i][0] for i in range(3))
        la, lb, lc = psi.labels[a], psi.labels[b], psi.labels[c]
        e_ab, e_ac = report.eof[la + lb], report.eof[la + lc]
        s_a_b = report.conditional_entropies[f"{la}|{lb}"]

        if report.total < minima["distribution"]:
            worst = index
        minima["distribution"] = min(minima["distribution"], report.total)
        minima["t1"] = min(minima["t1"], report.t1)
        minima["t2"] = min(minima["t2"], report.t2)
        minima["ckw"] = min(minima["ckw"], ckw_residual(psi, pivot))
        minima["t2_prime"] = min(minima["t2_prime"], abs(e_ac - e_ab) - abs(s_a_b))

        gap = e_ac - e_ab
        resolved = abs(gap) > SIGN_FLOOR and abs(s_a_b) > SIGN_FLOOR
        if resolved and np.sign(gap) != np.sign(s_a_b):
            same_sign += 1
        first, second = (b, c) if e_ac >= e_ab else (c, b)
        e_first, e_second = (e_ab, e_ac) if e_ac >= e_ab else (e_ac, e_ab)
        s_first = report.entropies[psi.labels[first]]
        s_second = report.entropies[psi.labels[second]]
        if s_first - e_first < s_second - e_second - CLIP_TOL:
            corollary += 1

    check = MonogamyCheck(
        samples=samples,
        seed=seed,
        min_distribution=minima["distribution"],
        min_t1=minima["t1"],
        min_t2=minima["t2"],
        min_ckw_margin=minima["ckw"],
        min_t2_prime=minima["t2_prime"],
        same_sign_violations=same_sign,
        corollary_violations=corollary,
        worst_sample=worst,
    )
    logger.info(
        f"Monogamy check over {samples} samples: "
        f"min distribution {check.min_distribution:.3e}"
    )
    return check


class SelfTestReport(BaseModel):
    """Worst-case disagreements between discord routes"""

    samples: int
    xstate_samples: int
    max_kw_gap: float
    """max |numeric - koashi_winter| over random pure 3-qubit states"""
    max_xstate_gap: float
    """max |numeric - xstate| over cavity two-qubit reductions"""
    max_balance_gap: float
    """max |D + J - I| over every evaluated result"""
    criterion_failures: int

    @property
    def passed(self) -> bool:
        return (
            self.max_kw_gap <= 1e-4
            and self.max_xstate_gap <= 1e-6
            and self.max_balance_gap <= 1e-8
            and self.criterion_failures == 0
        )


def run_selftest(
    seed: int, samples: int = 200, xstate_samples: int = 50
) -> SelfTestReport:
    """Cross-check the numeric discord route against the analytic routes.

    Koashi-Winter is compared on ``samples`` random pure three-qubit states
    (D_{A|B}); the sigma_x route on ``xstate_samples`` random (kappa t, alpha)
    reductions rho_{c1 c2} of the cavity output state.
    """
    kw_children = _children(seed, samples + 1)
    kw_gap = balance = 0.0
    for child in kw_children[:samples]:
        psi = random_pure_haar(3, child)
        numeric = quantum_discord(psi, [0], [1], route="numeric")
        analytic = quantum_discord(psi, [0], [1], route="koashi_winter")
        kw_gap = max(kw_gap, abs(numeric.discord - analytic.discord))
        for result in (numeric, analytic):
            balance = max(balance, _balance_gap(result))

    rng = np.random.default_rng(kw_children[samples])
    xs_gap = 0.0
    failures = 0
    for _ in range(xstate_samples):
        params = DampingParams(
            kappa_t=float(rng.uniform(0.0, 6.0)), alpha=float(rng.uniform(0.05, 0.95))
        )
        rho = partial_trace(output_state(params), ["c1", "c2"])
        if not is_xstate(rho) or not xstate_criterion(rho):
            failures += 1
            logger.error(
                f"sigma_x criterion fails at kappa_t={params.kappa_t:.4f}, "
                f"alpha={params.alpha:.4f}"
            )
            continue
        numeric = quantum_discord(rho, [0], [1], route="numeric")
        analytic = quantum_discord(rho, [0], [1], route="xstate")
        xs_gap = max(xs_gap, abs(numeric.discord - analytic.discord))
        for result in (numeric, analytic):
            balance = max(balance, _balance_gap(result))

    return SelfTestReport(
        samples=samples,
        xstate_samples=xstate_samples,
        max_kw_gap=kw_gap,
        max_xstate_gap=xs_gap,
        max_balance_gap=balance,
        criterion_failures=failures,
    )
