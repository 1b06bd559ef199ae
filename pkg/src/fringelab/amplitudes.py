"""Minimal amplitude calculus on a two-real-dimension carrier.

The carrier is the standard complex plane written as pairs ``(re, im)``.
Four structural rules drive everything here: amplitudes of indistinguishable
alternatives add; amplitudes of consecutive legs multiply; recombination of
distinguishable alternatives adds outcome weights instead (a classical
mixture); and a continuous one-parameter multiplicative phase action
``phase(a) * phase(b) = phase(a + b)`` supplies the tunable relative phase.

Probability is deliberately not hard-wired to the squared norm.  Any
functional from amplitudes to nonnegative weights can be registered as a
ProbabilityRule; the squared norm is only the default realization, and the
tests assert just the minimal requirements (global-phase invariance,
normalization, additivity over distinguishable outcomes).

carrier_minimality_check probes why two real dimensions are needed: on a
one-dimensional real carrier the only continuous multiplicative phase
actions are u_s(phi) = exp(s*phi), and no choice of s both leaves a
norm-based weight invariant and lets relative phase move recombination
statistics, while the planar rotation action does both.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence as SequenceType, Union

import numpy as np


class AmplitudeError(ValueError):
    """Invalid amplitude value or composition."""


class GraphStructureError(AmplitudeError):
    """Malformed alternative graph."""


class DegenerateOutcomesError(AmplitudeError):
    """Every declared outcome has weight zero; normalization is undefined."""


# ---------------------------------------------------------------------------
# carrier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Amplitude:
    """One process amplitude: a point (re, im) of the planar carrier."""

    re: float
    im: float = 0.0

    def __post_init__(self):
        re = float(self.re)
        im = float(self.im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise AmplitudeError("amplitude components must be finite")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)


ZERO = Amplitude(0.0, 0.0)
UNIT = Amplitude(1.0, 0.0)


def phase(phi: float) -> Amplitude:
    """Unit-norm carrier element u(phi) = (cos phi, sin phi)."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise AmplitudeError("phase must be finite")
    return Amplitude(math.cos(phi), math.sin(phi))


def sum_alternatives(a: Amplitude, b: Amplitude) -> Amplitude:
    """Amplitude of 'path a or path b' when nothing records which one."""
    return Amplitude(a.re + b.re, a.im + b.im)


def concat(a: Amplitude, b: Amplitude) -> Amplitude:
    """Amplitude of leg a followed by leg b: the carrier product."""
    return Amplitude(a.re * b.re - a.im * b.im,
                     a.re * b.im + a.im * b.re)


def norm_squared(a: Amplitude) -> float:
    return a.re * a.re + a.im * a.im


# ---------------------------------------------------------------------------
# probability rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbabilityRule:
    """Named functional sending an amplitude to a nonnegative weight.

    Registered rules are expected to be invariant under a global phase and
    to produce weights that normalize additively over distinguishable
    outcomes; check_global_phase_invariance tests the first property.
    """

    name: str
    weight: Callable[[Amplitude], float]

    def __call__(self, a: Amplitude) -> float:
        value = float(self.weight(a))
        if not math.isfinite(value) or value < 0.0:
            raise AmplitudeError(
                f"rule {self.name!r} produced an invalid weight {value!r}")
        return value


SQUARED_NORM = ProbabilityRule("squared-norm", norm_squared)

RULES: dict[str, ProbabilityRule] = {SQUARED_NORM.name: SQUARED_NORM}


def register_rule(rule: ProbabilityRule) -> ProbabilityRule:
    if rule.name in RULES:
        raise AmplitudeError(f"rule {rule.name!r} is already registered")
    RULES[rule.name] = rule
    return rule


def get_rule(rule: Union[str, ProbabilityRule]) -> ProbabilityRule:
    if isinstance(rule, ProbabilityRule):
        return rule
    try:
        return RULES[rule]
    except KeyError:
        known = ", ".join(sorted(RULES))
        raise AmplitudeError(f"unknown rule {rule!r}; registered: {known}") from None


# ---------------------------------------------------------------------------
# alternative graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    amplitude: Amplitude

    def __post_init__(self):
        if not isinstance(self.amplitude, Amplitude):
            raise GraphStructureError("leaf payload must be an Amplitude")


@dataclass(frozen=True)
class Sequence:
    """Consecutive legs of one path; amplitudes multiply."""

    children: tuple

    def __post_init__(self):
        children = tuple(self.children)
        if not children:
            raise GraphStructureError("sequence node needs at least one child")
        for ch in children:
            _require_graph(ch)
        object.__setattr__(self, "children", children)


@dataclass(frozen=True)
class Branch:
    """Parallel alternatives.

    ``distinguishable=False`` means no which-way record exists at
    recombination, so the alternatives keep one joint amplitude (the sum).
    ``distinguishable=True`` means a record exists and the alternatives are
    mutually exclusive outcomes whose weights add.
    """

    children: tuple
    distinguishable: bool

    def __post_init__(self):
        children = tuple(self.children)
        if len(children) < 2:
            raise GraphStructureError("branch node needs at least two children")
        for ch in children:
            _require_graph(ch)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "distinguishable", bool(self.distinguishable))


AlternativeGraph = Union[Leaf, Sequence, Branch]


def _require_graph(g) -> None:
    if not isinstance(g, (Leaf, Sequence, Branch)):
        raise GraphStructureError(
            f"expected a graph node, got {type(g).__name__}")


def components(g: AlternativeGraph) -> tuple[Amplitude, ...]:
    """Mutually exclusive amplitude components of a process graph.

    A graph with no distinguishable branching reduces to a single amplitude.
    Each distinguishable branch multiplies the component count; a sequence
    forms the cross product of its children's components.  Summing a branch
    whose child still carries several distinguishable components would erase
    recorded which-way information, so that shape is rejected.
    """
    _require_graph(g)
    if isinstance(g, Leaf):
        return (g.amplitude,)
    if isinstance(g, Sequence):
        parts = [components(ch) for ch in g.children]
        return tuple(_product_reduce(combo)
                     for combo in itertools.product(*parts))
    child_components = [components(ch) for ch in g.children]
    if g.distinguishable:
        return tuple(itertools.chain.from_iterable(child_components))
    total = ZERO
    for comps in child_components:
        if len(comps) != 1:
            raise GraphStructureError(
                "cannot coherently sum a child that already carries "
                "distinguishable components")
        total = sum_alternatives(total, comps[0])
    return (total,)


def _product_reduce(combo: tuple[Amplitude, ...]) -> Amplitude:
    out = combo[0]
    for a in combo[1:]:
        out = concat(out, a)
    return out


def evaluate(g: AlternativeGraph,
             rule: Union[str, ProbabilityRule] = SQUARED_NORM) -> float:
    """Raw (unnormalized) outcome weight of one process graph."""
    r = get_rule(rule)
    return math.fsum(r(a) for a in components(g))


def evaluate_outcomes(outcomes: Mapping[str, AlternativeGraph],
                      rule: Union[str, ProbabilityRule] = SQUARED_NORM
                      ) -> dict[str, float]:
    """Normalized weights over a set of declared, mutually exclusive outcomes.

    Raises DegenerateOutcomesError when every outcome weighs zero (for
    example full destructive cancellation with no alternative port); silent
    renormalization of 0/0 would hide modeling mistakes.
    """
    if not outcomes:
        raise GraphStructureError("need at least one declared outcome")
    r = get_rule(rule)
    raw = {name: evaluate(g, r) for name, g in outcomes.items()}
    total = math.fsum(raw.values())
    if total <= 0.0:
        raise DegenerateOutcomesError(
            "all declared outcomes have zero weight; nothing to normalize")
    return {name: w / total for name, w in raw.items()}


# ---------------------------------------------------------------------------
# rule and carrier diagnostics
# ---------------------------------------------------------------------------


def check_global_phase_invariance(rule: Union[str, ProbabilityRule],
                                  trials: int,
                                  rng: np.random.Generator | int | None = None,
                                  tol: float = 1e-12) -> bool:
    """True iff P(u(phi) A) == P(A) within ``tol`` over random trials."""
    if trials < 1:
        raise AmplitudeError("trials must be at least 1")
    r = get_rule(rule)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    for _ in range(trials):
        a = Amplitude(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        if abs(r(concat(phase(phi), a)) - r(a)) > tol:
            return False
    return True


@dataclass(frozen=True)
class CarrierActionRecord:
    """Behaviour of the 1D action u_s(phi) = exp(s*phi) for one exponent."""

    exponent: float
    phase_invariant: bool
    alters_recombination: bool

    @property
    def satisfies_both(self) -> bool:
        return self.phase_invariant and self.alters_recombination


@dataclass(frozen=True)
class CarrierMinimalityReport:
    actions: tuple[CarrierActionRecord, ...]
    one_dimensional_success: bool
    two_dimensional_invariant: bool
    two_dimensional_alters: bool
    passed: bool

    def as_dict(self) -> dict:
        return {
            "actions": [
                {"exponent": rec.exponent,
                 "phase_invariant": rec.phase_invariant,
                 "alters_recombination": rec.alters_recombination}
                for rec in self.actions],
            "one_dimensional_success": self.one_dimensional_success,
            "two_dimensional_invariant": self.two_dimensional_invariant,
            "two_dimensional_alters": self.two_dimensional_alters,
            "passed": self.passed,
        }


_DEFAULT_EXPONENTS = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)
_CARRIER_TOL = 1e-12


def carrier_minimality_check(phis: SequenceType[float],
                             exponents: Iterable[float] = _DEFAULT_EXPONENTS
                             ) -> CarrierMinimalityReport:
    """Probe whether a 1D real carrier can host a workable phase action.

    Continuity plus the multiplicative group law force any one-parameter
    action on the positive reals into the family u_s(phi) = exp(s*phi), so
    scanning a sign-representative exponent grid (with s=0 included) covers
    the 1D options.  For each s the report records whether a norm-squared
    weight is invariant under the action and whether the recombined weight
    of two unit paths with relative phase phi depends on phi.  The planar
    rotation action is measured the same way for contrast; it is the one
    that achieves both.
    """
    phis = [float(p) for p in phis]
    if not phis:
        raise AmplitudeError("phase grid must be nonempty")
    if any(not math.isfinite(p) for p in phis):
        raise AmplitudeError("phase grid must be finite")
    probes = (1.0, 0.7, -1.3)
    records = []
    for s in exponents:
        s = float(s)
        invariant = True
        for a in probes:
            base = a * a
            for p in phis:
                acted = math.exp(s * p) * a
                if abs(acted * acted - base) > _CARRIER_TOL:
                    invariant = False
                    break
            if not invariant:
                break
        recombined = [(1.0 + math.exp(s * p)) ** 2 for p in phis]
        alters = (max(recombined) - min(recombined)) > _CARRIER_TOL
        records.append(CarrierActionRecord(s, invariant, alters))
    two_invariant = all(
        abs(norm_squared(concat(phase(p), Amplitude(a, 0.3))) -
            norm_squared(Amplitude(a, 0.3))) <= _CARRIER_TOL
        for a in probes for p in phis)
    two_recombined = [norm_squared(sum_alternatives(UNIT, phase(p)))
                      for p in phis]
    two_alters = (max(two_recombined) - min(two_recombined)) > _CARRIER_TOL
    one_success = any(rec.satisfies_both for rec in records)
    return CarrierMinimalityReport(
        actions=tuple(records),
        one_dimensional_success=one_success,
        two_dimensional_invariant=two_invariant,
        two_dimensional_alters=two_alters,
        passed=(not one_success) and two_invariant and two_alters,
    )
