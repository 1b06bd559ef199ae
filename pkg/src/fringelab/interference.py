"""Mach-Zehnder benchmark with swappable composition rules.

Layout: a first beam splitter opens two arms (upper and lower), the upper
arm carries a tunable phase plate, mirrors steer both arms into a second
splitter, and two detectors D0 and D1 watch its output ports.  Either arm
can be blocked by a total absorber, and a detector model on the arms may or
may not record which path was taken.

Splitter convention (needed to fix which port is bright): a symmetric
splitter with transmissivity T transmits with amplitude sqrt(T) and
reflects with amplitude i*sqrt(1-T).  The upper arm is the transmitted one
at the first splitter, and D0 is the port reached by reflecting the upper
arm at the second splitter.  With 50/50 splitters this puts
p_d0 = cos^2(phi/2), bright at phi = 0.

Two composition rules are implemented.  ``amplitude`` builds the two-path
alternative graph and evaluates it with a probability rule; when a detector
records which-way information the branch is marked distinguishable and the
fringes die.  ``classical_mixture`` combines fixed per-path outcome
distributions with convex weights; that map has no phase input at all, which
is the structural point the no-go search documents.

Exactness notes: blocked-arm and classical probabilities are computed as
products of transmissivities, never as squared amplitude norms, so 50/50
values like 1/4 and 1/2 come out as exact binary floats.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

from .amplitudes import (
    Amplitude,
    Branch,
    DegenerateOutcomesError,
    Leaf,
    ProbabilityRule,
    SQUARED_NORM,
    Sequence as SequenceNode,
    evaluate,
    phase,
)
from .constants import DEFAULT_C, REL_TOL_ALGEBRA
from .kinematics import (
    FrameMap,
    IntervalKind,
    SpacetimePoint,
    classify_interval,
)


class ConfigError(ValueError):
    """Experiment description violates its invariants."""


class BlockedArm(str, Enum):
    NONE = "none"
    UPPER = "upper"
    LOWER = "lower"


class DetectorModel(str, Enum):
    NONE = "none"
    NON_DEMOLISHING_RECORDING = "non_demolishing_recording"
    NON_DEMOLISHING_SILENT = "non_demolishing_silent"
    ABSORB_AND_REEMIT_RECORDING = "absorb_and_reemit_recording"

    @property
    def records_which_way(self) -> bool:
        return self.value.endswith("_recording")


class Composition(str, Enum):
    AMPLITUDE = "amplitude"
    CLASSICAL_MIXTURE = "classical_mixture"


@dataclass(frozen=True)
class ExperimentConfig:
    """Operational description of one interferometer run.

    ``mixture_weights`` gives the classical path weights (upper, lower); it
    is meaningful only for classical composition and defaults there to the
    first splitter's (T, 1-T).
    """

    splitter1: float = 0.5
    splitter2: float = 0.5
    phase: float = 0.0
    blocked_arm: BlockedArm = BlockedArm.NONE
    detector_model: DetectorModel = DetectorModel.NONE
    composition: Composition = Composition.AMPLITUDE
    mixture_weights: tuple[float, float] | None = None

    def __post_init__(self):
        if isinstance(self.mixture_weights, list):
            object.__setattr__(self, "mixture_weights",
                               tuple(self.mixture_weights))
        # Plain strings are accepted wherever an enum value is expected.
        for name, kind in (("blocked_arm", BlockedArm),
                           ("detector_model", DetectorModel),
                           ("composition", Composition)):
            value = getattr(self, name)
            if isinstance(value, str) and not isinstance(value, kind):
                try:
                    object.__setattr__(self, name, kind(value))
                except ValueError:
                    pass  # problems() names the field below
        problems = self.problems()
        if problems:
            raise ConfigError("; ".join(problems))
        if self.mixture_weights is not None:
            object.__setattr__(self, "mixture_weights",
                               tuple(float(v) for v in self.mixture_weights))
        object.__setattr__(self, "splitter1", float(self.splitter1))
        object.__setattr__(self, "splitter2", float(self.splitter2))
        object.__setattr__(self, "phase", float(self.phase))

    def problems(self) -> list[str]:
        """Every invariant violation, named by field."""
        out = []
        for name in ("splitter1", "splitter2"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                out.append(f"{name}: must be a number")
            elif not (math.isfinite(value) and 0.0 <= value <= 1.0):
                out.append(f"{name}: transmissivity must lie in [0, 1], got {value!r}")
        if not isinstance(self.phase, (int, float)) or isinstance(self.phase, bool):
            out.append("phase: must be a number")
        elif not math.isfinite(self.phase):
            out.append("phase: must be finite")
        if not isinstance(self.blocked_arm, BlockedArm):
            out.append(f"blocked_arm: must be one of "
                       f"{[m.value for m in BlockedArm]}")
        if not isinstance(self.detector_model, DetectorModel):
            out.append(f"detector_model: must be one of "
                       f"{[m.value for m in DetectorModel]}")
        if not isinstance(self.composition, Composition):
            out.append(f"composition: must be one of "
                       f"{[m.value for m in Composition]}")
        if self.mixture_weights is not None:
            w = self.mixture_weights
            if (not isinstance(w, (tuple, list)) or len(w) != 2
                    or any(isinstance(v, bool) or not isinstance(v, (int, float))
                           for v in w)):
                out.append("mixture_weights: must be two numbers (upper, lower)")
            else:
                if any(not math.isfinite(v) or v < 0.0 for v in w):
                    out.append("mixture_weights: weights must be finite and nonnegative")
                elif abs(math.fsum(w) - 1.0) > REL_TOL_ALGEBRA:
                    out.append(f"mixture_weights: must sum to 1, got {math.fsum(w)!r}")
                if (isinstance(self.composition, Composition)
                        and self.composition is Composition.AMPLITUDE):
                    out.append("mixture_weights: only meaningful for "
                               "classical_mixture composition")
        return out


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities of the three exclusive outcomes plus port conditionals.

    Conditionals are defined only when some photon reaches a detector
    (p_d0 + p_d1 > 0); otherwise they are None.
    """

    p_d0: float
    p_d1: float
    p_absorbed: float
    p_d0_given_detected: float | None
    p_d1_given_detected: float | None

    @classmethod
    def from_weights(cls, w_d0: float, w_d1: float,
                     w_absorbed: float) -> "OutcomeDistribution":
        if min(w_d0, w_d1, w_absorbed) < 0.0:
            raise ConfigError("outcome weights must be nonnegative")
        total = w_d0 + w_d1 + w_absorbed
        if total <= 0.0:
            raise DegenerateOutcomesError(
                "all outcome weights are zero; nothing to normalize")
        p0, p1, pa = w_d0 / total, w_d1 / total, w_absorbed / total
        detected = p0 + p1
        if detected > 0.0:
            cond0, cond1 = p0 / detected, p1 / detected
        else:
            cond0 = cond1 = None
        return cls(p0, p1, pa, cond0, cond1)

    def as_tuple(self) -> tuple:
        return (self.p_d0, self.p_d1, self.p_absorbed,
                self.p_d0_given_detected, self.p_d1_given_detected)


def simulate(config: ExperimentConfig,
             rule: Union[str, ProbabilityRule] = SQUARED_NORM
             ) -> OutcomeDistribution:
    """Outcome distribution of one configured run."""
    if config.composition is Composition.CLASSICAL_MIXTURE:
        return _simulate_classical(config)
    return _simulate_amplitude(config, rule)


def _per_path_splits(T2: float) -> tuple[tuple[float, float, float],
                                         tuple[float, float, float]]:
    # (d0, d1, absorbed) weights for a photon known to ride one arm alone:
    # fixed entirely by the second splitter.  Upper reaches D0 by reflection.
    R2 = 1.0 - T2
    upper = (R2, T2, 0.0)
    lower = (T2, R2, 0.0)
    return upper, lower


def _simulate_classical(config: ExperimentConfig) -> OutcomeDistribution:
    # Convex mixture of per-path distributions.  The phase never enters:
    # this function does not read config.phase at all.
    T1 = float(config.splitter1)
    if config.mixture_weights is not None:
        w_upper, w_lower = (float(v) for v in config.mixture_weights)
    else:
        w_upper, w_lower = T1, 1.0 - T1
    p_upper, p_lower = _per_path_splits(float(config.splitter2))
    if config.blocked_arm is BlockedArm.UPPER:
        p_upper = (0.0, 0.0, 1.0)
    elif config.blocked_arm is BlockedArm.LOWER:
        p_lower = (0.0, 0.0, 1.0)
    weights = tuple(w_upper * u + w_lower * v
                    for u, v in zip(p_upper, p_lower))
    return OutcomeDistribution.from_weights(*weights)


def _simulate_amplitude(config: ExperimentConfig,
                        rule: Union[str, ProbabilityRule]) -> OutcomeDistribution:
    T1 = float(config.splitter1)
    T2 = float(config.splitter2)
    R1 = 1.0 - T1
    R2 = 1.0 - T2
    if config.blocked_arm is not BlockedArm.NONE:
        # One arm survives, so there is nothing to interfere; the outcome
        # weights are plain products of splitter probabilities (kept as
        # products so 50/50 values stay exact binary fractions).
        p_upper, p_lower = _per_path_splits(T2)
        if config.blocked_arm is BlockedArm.UPPER:
            live_weight, absorbed, splits = R1, T1, p_lower
        else:
            live_weight, absorbed, splits = T1, R1, p_upper
        return OutcomeDistribution.from_weights(
            live_weight * splits[0], live_weight * splits[1], absorbed)

    t1, r1 = math.sqrt(T1), math.sqrt(R1)
    t2, r2 = math.sqrt(T2), math.sqrt(R2)
    recorded = config.detector_model.records_which_way
    upper_in = SequenceNode((Leaf(Amplitude(t1, 0.0)),
                             Leaf(phase(config.phase))))
    lower_in = Leaf(Amplitude(0.0, r1))
    to_d0 = Branch((SequenceNode((upper_in, Leaf(Amplitude(0.0, r2)))),
                    SequenceNode((lower_in, Leaf(Amplitude(t2, 0.0))))),
                   distinguishable=recorded)
    to_d1 = Branch((SequenceNode((upper_in, Leaf(Amplitude(t2, 0.0)))),
                    SequenceNode((lower_in, Leaf(Amplitude(0.0, r2))))),
                   distinguishable=recorded)
    return OutcomeDistribution.from_weights(
        evaluate(to_d0, rule), evaluate(to_d1, rule), 0.0)


def phase_sweep(config: ExperimentConfig, phis: Sequence[float],
                rule: Union[str, ProbabilityRule] = SQUARED_NORM
                ) -> list[tuple[float, OutcomeDistribution]]:
    """simulate at each phase in turn, keeping everything else fixed."""
    phis = [float(p) for p in phis]
    if not phis:
        raise ConfigError("phase sweep needs at least one phase")
    return [(p, simulate(dataclasses.replace(config, phase=p), rule))
            for p in phis]


def visibility(sweep: Sequence[tuple[float, OutcomeDistribution]]) -> float:
    """Fringe contrast (max-min)/(max+min) of p_d0 over a sweep; 0/0 is 0."""
    if not sweep:
        raise ConfigError("visibility needs a nonempty sweep")
    values = [dist.p_d0 for _, dist in sweep]
    hi, lo = max(values), min(values)
    denom = hi + lo
    return 0.0 if denom == 0.0 else (hi - lo) / denom


def uniform_phase_grid(n: int) -> list[float]:
    """n phases 2*pi*k/n, k = 0..n-1; for even n the grid hits pi exactly."""
    if n < 1:
        raise ConfigError("phase grid needs at least one point")
    return [2.0 * math.pi * k / n for k in range(n)]


# ---------------------------------------------------------------------------
# no-go search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NoGoReport:
    """Brute-force contrast between classical mixtures and amplitudes.

    ``max_classical_variation`` is the largest phase-to-phase change of any
    outcome probability over every enumerated classical configuration; the
    classical map never reads the phase, so anything other than exactly 0
    would expose a leak.  ``amplitude_visibility`` is the fringe contrast of
    the default amplitude configuration on the same phase grid.
    """

    resolution: int
    phase_count: int
    classical_config_count: int
    max_variation_d0: float
    max_variation_d1: float
    max_variation_absorbed: float
    max_classical_variation: float
    amplitude_visibility: float
    classical_phase_independent: bool
    passed: bool

    def as_dict(self) -> dict:
        return {
            "resolution": self.resolution,
            "phase_count": self.phase_count,
            "classical_config_count": self.classical_config_count,
            "max_variation_d0": self.max_variation_d0,
            "max_variation_d1": self.max_variation_d1,
            "max_variation_absorbed": self.max_variation_absorbed,
            "max_classical_variation": self.max_classical_variation,
            "amplitude_visibility": self.amplitude_visibility,
            "classical_phase_independent": self.classical_phase_independent,
            "passed": self.passed,
        }


def no_go_search(phis: Sequence[float],
                 weight_grid_resolution: int = 101) -> NoGoReport:
    """Exhaustive phase-sensitivity scan of classical-mixture configurations.

    Enumerates path weights (w, 1-w) over a uniform grid at the requested
    resolution, crossed with every blocking and detector-model variant, all
    in classical composition; records the worst phase variation of each
    outcome probability.  The companion number is the amplitude-mode fringe
    visibility on the same phases, which should be maximal when the grid
    spans a full period.
    """
    phis = [float(p) for p in phis]
    if len(phis) < 2:
        raise ConfigError("no-go search needs at least two phases")
    if weight_grid_resolution < 2:
        raise ConfigError("weight grid resolution must be at least 2")
    steps = weight_grid_resolution - 1
    var_d0 = var_d1 = var_abs = 0.0
    count = 0
    for k in range(weight_grid_resolution):
        w = k / steps
        weights = (w, 1.0 - w)
        for blocked in BlockedArm:
            for model in DetectorModel:
                config = ExperimentConfig(
                    composition=Composition.CLASSICAL_MIXTURE,
                    mixture_weights=weights,
                    blocked_arm=blocked,
                    detector_model=model)
                count += 1
                rows = [simulate(dataclasses.replace(config, phase=p))
                        for p in phis]
                d0 = [r.p_d0 for r in rows]
                d1 = [r.p_d1 for r in rows]
                ab = [r.p_absorbed for r in rows]
                var_d0 = max(var_d0, max(d0) - min(d0))
                var_d1 = max(var_d1, max(d1) - min(d1))
                var_abs = max(var_abs, max(ab) - min(ab))
    overall = max(var_d0, var_d1, var_abs)
    vis = visibility(phase_sweep(ExperimentConfig(), phis))
    independent = overall == 0.0
    return NoGoReport(
        resolution=weight_grid_resolution,
        phase_count=len(phis),
        classical_config_count=count,
        max_variation_d0=var_d0,
        max_variation_d1=var_d1,
        max_variation_absorbed=var_abs,
        max_classical_variation=overall,
        amplitude_visibility=vis,
        classical_phase_independent=independent,
        passed=independent and vis >= 1.0 - 1e-12,
    )


# ---------------------------------------------------------------------------
# detector-robustness and frame-invariance reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DetectorVisibilityEntry:
    model: str
    records_which_way: bool
    visibility: float
    ok: bool


@dataclass(frozen=True)
class DetectorRobustnessReport:
    entries: tuple[DetectorVisibilityEntry, ...]
    passed: bool

    def as_dict(self) -> dict:
        return {
            "entries": [
                {"model": e.model,
                 "records_which_way": e.records_which_way,
                 "visibility": e.visibility,
                 "ok": e.ok}
                for e in self.entries],
            "passed": self.passed,
        }


def check_O1_robustness(phis: Sequence[float]) -> DetectorRobustnessReport:
    """Fringe visibility under each detector model, amplitude composition.

    Any model that records which way the photon went must flatten the
    fringes (visibility at the rounding floor); any silent model must leave
    them at full contrast.
    """
    phis = [float(p) for p in phis]
    if len(phis) < 2:
        raise ConfigError("robustness check needs at least two phases")
    entries = []
    for model in DetectorModel:
        config = ExperimentConfig(detector_model=model)
        vis = visibility(phase_sweep(config, phis))
        if model.records_which_way:
            ok = vis <= 1e-12
        else:
            ok = vis >= 1.0 - 1e-9
        entries.append(DetectorVisibilityEntry(
            model.value, model.records_which_way, vis, ok))
    return DetectorRobustnessReport(tuple(entries),
                                    passed=all(e.ok for e in entries))


_EVENT_TABLE: tuple[tuple[str, float, float], ...] = (
    # The interferometer's marker events on a light-speed skeleton: photon
    # legs are null, the two mirror reflections are mutually spacelike.
    ("source", 0.0, -1.0),
    ("splitter1", 1.0, 0.0),
    ("mirror_upper", 2.0, 1.0),
    ("mirror_lower", 2.0, -1.0),
    ("splitter2", 3.0, 0.0),
    ("detector_d0", 4.0, 1.0),
    ("detector_d1", 4.0, -1.0),
)


def interferometer_events(c: float = DEFAULT_C) -> dict[str, SpacetimePoint]:
    """Canonical-frame marker events of the bench layout, scaled by c."""
    return {name: SpacetimePoint(t, c * x) for name, t, x in _EVENT_TABLE}


@dataclass(frozen=True)
class FrameInvarianceEntry:
    velocity: float
    interval_kinds_preserved: bool
    statistics_identical: bool


@dataclass(frozen=True)
class FrameInvarianceReport:
    baseline: OutcomeDistribution
    entries: tuple[FrameInvarianceEntry, ...]
    passed: bool

    def as_dict(self) -> dict:
        return {
            "baseline": list(self.baseline.as_tuple()),
            "entries": [
                {"velocity": e.velocity,
                 "interval_kinds_preserved": e.interval_kinds_preserved,
                 "statistics_identical": e.statistics_identical}
                for e in self.entries],
            "passed": self.passed,
        }


def check_O3_frame_invariance(config: ExperimentConfig,
                              boosts: Sequence[float],
                              c: float = DEFAULT_C) -> FrameInvarianceReport:
    """Observed statistics and causal relations under subluminal boosts.

    The experiment description (splitter ratios, relative phase, blocking,
    detector model) contains no frame-dependent quantity, so simulate must
    return bit-identical numbers in every frame; the geometric content is
    that boosting the bench's marker events never changes any pair's
    interval classification.
    """
    events = interferometer_events(c)
    names = list(events)
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    baseline_kinds = {
        (a, b): classify_interval(events[a], events[b], c).kind
        for a, b in pairs}
    baseline = simulate(config)
    entries = []
    for V in boosts:
        m = FrameMap.boost(float(V), c)  # rejects |V| >= c
        moved = {name: m.apply(p) for name, p in events.items()}
        kinds_ok = all(
            classify_interval(moved[a], moved[b], c).kind is baseline_kinds[a, b]
            for a, b in pairs)
        again = simulate(config)
        stats_ok = again.as_tuple() == baseline.as_tuple()
        entries.append(FrameInvarianceEntry(float(V), kinds_ok, stats_ok))
    return FrameInvarianceReport(
        baseline=baseline,
        entries=tuple(entries),
        passed=all(e.interval_kinds_preserved and e.statistics_identical
                   for e in entries),
    )


# A reading aid for reports: which interval class each adjacent leg has.
def event_pair_classification(c: float = DEFAULT_C) -> dict[str, str]:
    events = interferometer_events(c)
    names = list(events)
    out = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            kind = classify_interval(events[a], events[b], c).kind
            out[f"{a}->{b}"] = kind.value
    return out


__all__ = [
    "BlockedArm",
    "Composition",
    "ConfigError",
    "DetectorModel",
    "DetectorRobustnessReport",
    "DetectorVisibilityEntry",
    "ExperimentConfig",
    "FrameInvarianceEntry",
    "FrameInvarianceReport",
    "NoGoReport",
    "OutcomeDistribution",
    "check_O1_robustness",
    "check_O3_frame_invariance",
    "event_pair_classification",
    "interferometer_events",
    "no_go_search",
    "phase_sweep",
    "simulate",
    "uniform_phase_grid",
    "visibility",
]
