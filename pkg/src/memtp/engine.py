"""Protocol engine: sequences of two-level thermalisations on joint states.

A memory-assisted swap between system levels i and j touches the N x N grid
of joint entries (i, k) x (j, l). A schedule fixes the visiting order of the
grid; all supported traversal families visit every grid point exactly once.
Schedules are stored as maximal "runs" that keep one joint entry active
against a sweep of partner entries; runs sharing a Gibbs weight across
partners are executed as a linear recurrence in C (scipy.signal.lfilter),
which makes memory sizes of a few thousand cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from .states import (JointState, distribution, gibbs_state, joint_gibbs,
                     marginalize, mutual_information, relative_entropy,
                     spectrum, tensor)

FAMILIES = ("default", "blue", "red", "cyan", "orange")
_FAST_RUN_MIN = 16   # below this, the python loop beats the lfilter call

__all__ = [
    "FAMILIES", "Run", "ProtocolSchedule", "build_schedule",
    "two_level_thermalize", "run_truncated", "thermalize_memory",
    "run_full_swap", "run_composed",
    "TrajectoryPoint", "TrajectoryRecorder",
]


def two_level_thermalize(state, gamma, i: int, j: int, lam: float = 1.0) -> np.ndarray:
    """Partial thermalisation of levels i and j with strength lam in [0, 1].

    The pair's total population s = p_i + p_j is computed once and the
    second entry is written as s minus the first, so the overall sum is
    preserved to the last bit. lam = 1 fully thermalises the pair.
    """
    p = np.array(state, dtype=float)
    g = np.asarray(gamma, dtype=float)
    if i == j:
        raise ValueError("i and j must differ")
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    if not (0 <= i < p.size and 0 <= j < p.size):
        raise ValueError("level index out of range")
    s = p[i] + p[j]
    w = (1.0 - lam) * p[i] + lam * (g[i] / (g[i] + g[j])) * s
    p[i] = w
    p[j] = s - w
    return p


@dataclass(frozen=True, eq=False)
class Run:
    """One active joint entry thermalised sequentially against partners."""

    active: int
    partners: np.ndarray


@dataclass(frozen=True, eq=False)
class ProtocolSchedule:
    """Visiting order of the N x N thermalisation grid for one level pair.

    ``runs`` is the executable form. ``steps()`` materialises the flat list
    of joint index pairs, canonically oriented as (level-i entry, level-j
    entry); it costs O(N^2) memory, so large schedules should stay in run
    form.
    """

    family: str
    variant: int
    levels: tuple[int, int]
    memory_dim: int
    runs: tuple[Run, ...] = field(repr=False)

    def steps(self) -> list[tuple[int, int]]:
        i, j = self.levels
        N = self.memory_dim
        out = []
        for run in self.runs:
            if run.active // N == i:
                out.extend((run.active, int(p)) for p in run.partners)
            else:
                out.extend((int(p), run.active) for p in run.partners)
        return out

    def grid_points(self) -> list[tuple[int, int]]:
        """The visited (k, l) memory-slot pairs, in execution order."""
        i, j = self.levels
        N = self.memory_dim
        return [(a - i * N, b - j * N) for a, b in self.steps()]


def _segments_for_family(family: str, N: int, variant: int):
    """Yield (axis, fixed, lo, hi) segments; axis "col" fixes k, "row" fixes l."""
    if family in ("default", "blue"):
        for s in range(N):
            yield ("col", s, 0 if family == "default" else s, N)
            if family == "blue" and s + 1 < N:
                yield ("row", s, s + 1, N)
        return
    # cyan: variant bit t (LSB first) picks the t-th sweep, 0 = row, 1 = col
    next_col = next_row = 0
    t = 0
    while next_col < N or next_row < N:
        want_col = bool((variant >> t) & 1) if t < variant.bit_length() else False
        t += 1
        if (want_col and next_col < N) or next_row >= N:
            yield ("col", next_col, next_row, N)
            next_col += 1
        else:
            yield ("row", next_row, next_col, N)
            next_row += 1


def _reverse_relabel(segments, N: int):
    """Reverse a segment list and relabel both memory-slot axes x -> N-1-x.

    Turns an ascending traversal into its geometric reverse while keeping
    every segment ascending, so "red" and "orange" execute the mirrored
    pattern of "blue" and "cyan".
    """
    out = []
    for axis, fixed, lo, hi in reversed(segments):
        out.append((axis, N - 1 - fixed, N - hi, N - lo))
    return out


def build_schedule(family: str, levels, N: int, variant: int = 0) -> ProtocolSchedule:
    """Schedule for the memory-assisted swap of system ``levels`` = (i, j).

    Families: "default" sweeps full columns in order; "blue" alternates the
    next column and the next row with shrinking lengths; "red" is the
    mirrored reverse of blue; "cyan" interleaves row and column sweeps as
    chosen by the bits of ``variant`` (all rows for variant 0); "orange" is
    the mirrored reverse of cyan. Every family visits each of the N^2 grid
    points exactly once and all produce the same truncated output.
    """
    i, j = (int(levels[0]), int(levels[1]))
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if variant < 0:
        raise ValueError("variant must be a non-negative integer")
    if N < 1:
        raise ValueError("memory dimension must be >= 1")
    if i == j or i < 0 or j < 0:
        raise ValueError("levels must be two distinct non-negative indices")
    base = "blue" if family == "red" else "cyan" if family == "orange" else family
    segments = list(_segments_for_family(base, N, variant))
    if family in ("red", "orange"):
        segments = _reverse_relabel(segments, N)
    runs = []
    for axis, fixed, lo, hi in segments:
        if lo >= hi:
            continue
        if axis == "col":
            runs.append(Run(i * N + fixed, j * N + np.arange(lo, hi)))
        else:
            runs.append(Run(j * N + fixed, i * N + np.arange(lo, hi)))
    return ProtocolSchedule(family, variant, (i, j), N, tuple(runs))


class TrajectoryPoint(dict):
    """Per-step record: step index, divergences, mutual information."""


class TrajectoryRecorder:
    """Collects per-step entropic scalars (and optionally joint copies).

    Recorded fields per step: relative entropies of the system, memory and
    joint state to their thermal references, and the system-memory mutual
    information. Full joint copies are stored only when ``store_states``.
    """

    def __init__(self, template: JointState, beta: float,
                 store_states: bool = False):
        self.template = template
        self.store_states = store_states
        self.gamma_system = gibbs_state(template.system_spectrum, beta)
        self.gamma_memory = gibbs_state(template.memory_spectrum, beta)
        self.gamma_joint = np.kron(self.gamma_system, self.gamma_memory)
        self.points: list[TrajectoryPoint] = []

    def record(self, step: int, probs: np.ndarray) -> None:
        joint = self.template.replace_probs(probs)
        pt = TrajectoryPoint(
            step=step,
            d_system=relative_entropy(marginalize(joint, "system"),
                                      self.gamma_system),
            d_memory=relative_entropy(marginalize(joint, "memory"),
                                      self.gamma_memory),
            d_joint=relative_entropy(probs, self.gamma_joint),
            mutual_information=mutual_information(joint),
        )
        if self.store_states:
            pt["joint"] = probs.copy()
        self.points.append(pt)

    def joint_divergences(self) -> np.ndarray:
        return np.array([pt["d_joint"] for pt in self.points])


def _execute(probs: np.ndarray, g: np.ndarray, runs, recorder=None,
             step_offset: int = 0) -> int:
    """Apply runs to probs in place; returns the number of steps executed."""
    steps = step_offset
    for run in runs:
        ga = g[run.active]
        gp = g[run.partners]
        if (recorder is None and gp.size >= _FAST_RUN_MIN
                and np.all(gp == gp[0])):
            gam = ga / (ga + gp[0])
            part = probs[run.partners]
            x0 = probs[run.active]
            y = lfilter([gam], [1.0, -gam], part, zi=np.array([gam * x0]))[0]
            x_prev = np.concatenate(([x0], y[:-1]))
            pair_sum = x_prev + part
            probs[run.partners] = pair_sum - y
            probs[run.active] = y[-1]
            steps += part.size
        else:
            for p_idx in run.partners:
                s = probs[run.active] + probs[p_idx]
                w = ga / (ga + g[p_idx]) * s
                probs[run.active] = w
                probs[p_idx] = s - w
                steps += 1
                if recorder is not None:
                    recorder.record(steps, probs)
    return steps


def run_truncated(joint: JointState, beta: float, schedule: ProtocolSchedule,
                  recorder: TrajectoryRecorder | None = None) -> JointState:
    """Apply a schedule of full two-level thermalisations to a joint state."""
    i, j = schedule.levels
    if schedule.memory_dim != joint.memory_dim:
        raise ValueError("schedule memory dimension does not match state")
    if not (0 <= i < joint.system_dim and 0 <= j < joint.system_dim):
        raise ValueError("schedule levels out of range for state")
    g = joint_gibbs(joint, beta)
    probs = joint.probs.copy()
    if recorder is not None and not recorder.points:
        recorder.record(0, probs)
    _execute(probs, g, schedule.runs, recorder)
    return joint.replace_probs(probs)


def thermalize_memory(joint: JointState, beta: float) -> JointState:
    """Discard correlations: re-tensor the system marginal with thermal memory."""
    q = marginalize(joint, "system")
    gm = gibbs_state(joint.memory_spectrum, beta)
    return joint.replace_probs(np.kron(q, gm))


def run_full_swap(state, system_spectrum, beta: float, levels, N: int, *,
                  family: str = "default", variant: int = 0,
                  memory_spectrum=None,
                  recorder: TrajectoryRecorder | None = None) -> np.ndarray:
    """Memory-assisted swap: tensor, truncated protocol, memory discard.

    Returns the final system marginal. The memory starts thermal; its
    spectrum defaults to trivial (all levels at zero energy).
    """
    em = np.zeros(N) if memory_spectrum is None else spectrum(memory_spectrum)
    if em.size != N:
        raise ValueError("memory spectrum length must equal N")
    gm = gibbs_state(em, beta)
    joint = tensor(distribution(state), gm, spectrum(system_spectrum), em)
    sched = build_schedule(family, levels, N, variant)
    joint = run_truncated(joint, beta, sched, recorder)
    joint = thermalize_memory(joint, beta)
    if recorder is not None:
        recorder.record(len(recorder.points), joint.probs)
    return marginalize(joint, "system")


def run_composed(state, system_spectrum, beta: float, chain, N: int, *,
                 mode: str = "truncated", family: str = "default",
                 variant: int = 0, memory_spectrum=None,
                 recorder: TrajectoryRecorder | None = None) -> np.ndarray:
    """Composition of memory-assisted swaps along a transposition chain.

    ``mode="full"`` thermalises the memory after every block; "truncated"
    keeps the memory alive across blocks and thermalises once at the end.
    Returns the final system marginal.
    """
    if mode not in ("full", "truncated"):
        raise ValueError(f"mode must be 'full' or 'truncated', got {mode!r}")
    em = np.zeros(N) if memory_spectrum is None else spectrum(memory_spectrum)
    gm = gibbs_state(em, beta)
    joint = tensor(distribution(state), gm, spectrum(system_spectrum), em)
    for (i, j) in chain:
        sched = build_schedule(family, (i, j), N, variant)
        joint = run_truncated(joint, beta, sched, recorder)
        if mode == "full":
            joint = thermalize_memory(joint, beta)
    if mode == "truncated":
        joint = thermalize_memory(joint, beta)
    return marginalize(joint, "system")
