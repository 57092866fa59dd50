"""Risk functions mapping exposure-history features to a level in [0, 1].

Eight model families are built in. Each maps the four exposure features
(exposed now, ever exposed, time since first exposure, time since last
exposure) to a risk level r; the ADR probability at that cell is then
(pi1 - pi0) * r + pi0.

    no_association    r = 0 everywhere
    current_use       r = 1 while exposed, else 0
    withdrawal        r = exp(-rho * tsl) after exposure ends, 0 while
                      exposed or never exposed
    delayed           r = exp(-((tsf - mu) / sigma)^2 / 2) once exposed
    decaying          r = exp(-rho * tsf) once exposed
    delayed_decaying  sum of the previous two, scaled by a constant so the
                      maximum over tsf in {1..T-1} is exactly 1 (and capped
                      at 1 at tsf = 0, where the unscaled sum can exceed it)
    long_term         logistic 1 / (1 + exp(-rho * (tsf - kappa))) once
                      exposed
    past              r = 1 while the last exposure lies within the past p
                      time points, else 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy.special import expit

from .cohort import ExposureFeatures

__all__ = [
    "ModelKind",
    "ModelSpec",
    "RiskLevel",
    "CANDIDATE_ORDER",
    "PARAM_NAMES",
    "param_count",
    "risk",
    "risk_values",
    "normalizing_constant",
    "spec_to_kv",
    "spec_from_kv",
]

RiskLevel = float


class ModelKind(str, Enum):
    NO_ASSOCIATION = "no_association"
    CURRENT_USE = "current_use"
    WITHDRAWAL = "withdrawal"
    DELAYED = "delayed"
    DECAYING = "decaying"
    DELAYED_DECAYING = "delayed_decaying"
    LONG_TERM = "long_term"
    PAST = "past"

    def __str__(self) -> str:  # keep CLI/CSV output free of the enum repr
        return self.value


# candidate ordering used everywhere a model set is scored or reported
CANDIDATE_ORDER: tuple[ModelKind, ...] = (
    ModelKind.NO_ASSOCIATION,
    ModelKind.CURRENT_USE,
    ModelKind.WITHDRAWAL,
    ModelKind.DELAYED,
    ModelKind.DECAYING,
    ModelKind.DELAYED_DECAYING,
    ModelKind.LONG_TERM,
    ModelKind.PAST,
)

# risk-function parameters per kind, in canonical order
PARAM_NAMES: dict[ModelKind, tuple[str, ...]] = {
    ModelKind.NO_ASSOCIATION: (),
    ModelKind.CURRENT_USE: (),
    ModelKind.WITHDRAWAL: ("rho",),
    ModelKind.DELAYED: ("mu", "sigma"),
    ModelKind.DECAYING: ("rho",),
    ModelKind.DELAYED_DECAYING: ("mu", "sigma", "rho"),
    ModelKind.LONG_TERM: ("rho", "kappa"),
    ModelKind.PAST: ("p",),
}

_CONTINUOUS = ("rho", "mu", "sigma", "kappa")


def param_count(kind: ModelKind | str) -> int:
    """Number of risk-function parameters q (the discrete p counts too)."""
    return len(PARAM_NAMES[ModelKind(kind)])


@dataclass(frozen=True)
class ModelSpec:
    """A risk model with concrete parameter values.

    horizon_T is the observation length; it is required for
    delayed_decaying (the normalizing constant maximizes over tsf in
    {1..horizon_T-1}) and bounds p for the past model when present.
    """

    kind: ModelKind
    rho: float | None = None
    mu: float | None = None
    sigma: float | None = None
    kappa: float | None = None
    p: int | None = None
    horizon_T: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        needed = PARAM_NAMES[self.kind]
        for name in _CONTINUOUS + ("p",):
            value = getattr(self, name)
            if name in needed:
                if value is None:
                    raise ValueError(f"{self.kind} requires parameter {name}")
            elif value is not None:
                raise ValueError(f"{self.kind} does not take parameter {name}")
        for name in _CONTINUOUS:
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be > 0, got {value}")
        if self.p is not None:
            if int(self.p) != self.p or self.p < 1:
                raise ValueError(f"p must be an integer >= 1, got {self.p}")
            object.__setattr__(self, "p", int(self.p))
            if self.horizon_T is not None and self.p > self.horizon_T - 1:
                raise ValueError(f"p={self.p} exceeds horizon_T-1={self.horizon_T - 1}")
        if self.horizon_T is not None and self.horizon_T < 1:
            raise ValueError("horizon_T must be >= 1")
        if self.kind is ModelKind.DELAYED_DECAYING:
            if self.horizon_T is None or self.horizon_T < 2:
                raise ValueError("delayed_decaying requires horizon_T >= 2")

    def params(self) -> dict[str, float | int]:
        """Risk-function parameter values, keyed by name."""
        return {name: getattr(self, name) for name in PARAM_NAMES[self.kind]}

    def with_horizon(self, horizon_T: int) -> "ModelSpec":
        return replace(self, horizon_T=horizon_T)


def normalizing_constant(mu: float, sigma: float, rho: float, horizon_T: int) -> float:
    """Maximum of the delayed + decaying sum over tsf in {1..horizon_T-1}.

    Exact maximization over the finite grid; dividing the sum by this value
    makes the combined risk attain 1 somewhere on that grid.
    """
    if not (mu > 0 and sigma > 0 and rho > 0):
        raise ValueError("mu, sigma, rho must all be > 0")
    if horizon_T < 2:
        raise ValueError("horizon_T must be >= 2")
    s = np.arange(1, horizon_T, dtype=float)
    return float(np.max(np.exp(-0.5 * ((s - mu) / sigma) ** 2) + np.exp(-rho * s)))


def risk(spec: ModelSpec, f: ExposureFeatures) -> RiskLevel:
    """Evaluate the model's risk level for one cell's exposure features."""
    kind = spec.kind
    if kind is ModelKind.NO_ASSOCIATION:
        return 0.0
    if kind is ModelKind.CURRENT_USE:
        return 1.0 if f.exposed_now else 0.0
    if not f.ever_exposed:
        return 0.0
    tsf = f.time_since_first
    tsl = f.time_since_last
    if kind is ModelKind.WITHDRAWAL:
        if f.exposed_now:
            return 0.0
        return math.exp(-spec.rho * tsl)
    if kind is ModelKind.DELAYED:
        return math.exp(-0.5 * ((tsf - spec.mu) / spec.sigma) ** 2)
    if kind is ModelKind.DECAYING:
        return math.exp(-spec.rho * tsf)
    if kind is ModelKind.DELAYED_DECAYING:
        c = normalizing_constant(spec.mu, spec.sigma, spec.rho, spec.horizon_T)
        total = math.exp(-0.5 * ((tsf - spec.mu) / spec.sigma) ** 2) + math.exp(-spec.rho * tsf)
        return min(1.0, total / c)
    if kind is ModelKind.LONG_TERM:
        return float(expit(spec.rho * (tsf - spec.kappa)))
    if kind is ModelKind.PAST:
        return 1.0 if tsl <= spec.p else 0.0
    raise ValueError(f"unknown model kind {kind!r}")


def risk_values(
    spec: ModelSpec,
    exposed_now: np.ndarray,
    ever_exposed: np.ndarray,
    tsf: np.ndarray,
    tsl: np.ndarray,
) -> np.ndarray:
    """Vectorized risk over parallel feature arrays.

    tsf/tsl may hold any sentinel (e.g. -1) where ever_exposed is False;
    those positions come out as 0.
    """
    kind = spec.kind
    ever = np.asarray(ever_exposed, dtype=bool)
    now = np.asarray(exposed_now, dtype=bool)
    if kind is ModelKind.NO_ASSOCIATION:
        return np.zeros(ever.shape)
    if kind is ModelKind.CURRENT_USE:
        return now.astype(float)
    tsf = np.asarray(tsf, dtype=float)
    tsl = np.asarray(tsl, dtype=float)
    with np.errstate(over="ignore", under="ignore"):
        if kind is ModelKind.WITHDRAWAL:
            return np.where(ever & ~now, np.exp(-spec.rho * np.maximum(tsl, 0.0)), 0.0)
        if kind is ModelKind.DELAYED:
            core = np.exp(-0.5 * ((tsf - spec.mu) / spec.sigma) ** 2)
        elif kind is ModelKind.DECAYING:
            core = np.exp(-spec.rho * np.maximum(tsf, 0.0))
        elif kind is ModelKind.DELAYED_DECAYING:
            c = normalizing_constant(spec.mu, spec.sigma, spec.rho, spec.horizon_T)
            core = np.minimum(
                1.0,
                (
                    np.exp(-0.5 * ((tsf - spec.mu) / spec.sigma) ** 2)
                    + np.exp(-spec.rho * np.maximum(tsf, 0.0))
                )
                / c,
            )
        elif kind is ModelKind.LONG_TERM:
            core = expit(spec.rho * (tsf - spec.kappa))
        elif kind is ModelKind.PAST:
            core = (tsl <= spec.p).astype(float)
        else:
            raise ValueError(f"unknown model kind {kind!r}")
    return np.where(ever, core, 0.0)


# ---------------------------------------------------------------------------
# Flat key-value serialization, e.g. "kind=delayed mu=2 sigma=2"

_KV_KEYS = {"rho": float, "mu": float, "sigma": float, "kappa": float, "p": int, "T": int}


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def spec_to_kv(spec: ModelSpec) -> str:
    parts = [f"kind={spec.kind.value}"]
    parts += [f"{name}={_fmt(getattr(spec, name))}" for name in PARAM_NAMES[spec.kind]]
    if spec.horizon_T is not None:
        parts.append(f"T={spec.horizon_T}")
    return " ".join(parts)


def spec_from_kv(text: str, horizon_T: int | None = None) -> ModelSpec:
    """Parse the flat key-value form; an explicit T= key wins over horizon_T."""
    fields: dict[str, object] = {}
    kind = None
    for token in text.split():
        if "=" not in token:
            raise ValueError(f"bad model token {token!r}: expected key=value")
        key, _, raw = token.partition("=")
        if key == "kind":
            kind = raw
        elif key in _KV_KEYS:
            try:
                fields[key] = _KV_KEYS[key](raw)
            except ValueError:
                raise ValueError(f"bad value for {key}: {raw!r}") from None
        else:
            raise ValueError(f"unknown model key {key!r}")
    if kind is None:
        raise ValueError("model spec needs a kind= entry")
    T = fields.pop("T", horizon_T)
    return ModelSpec(kind=ModelKind(kind), horizon_T=T, **fields)
