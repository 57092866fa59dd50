"""Maximum-likelihood fitting of risk models to a cohort.

The Bernoulli log-likelihood of a model depends on the exposure history
only through the four per-cell features, so every cohort is first reduced
to a FeatureHistogram (feature class -> ADR / no-ADR cell counts). Closed
forms cover the no-association, current-use, and past models; the other
kinds are maximized with a multi-start Nelder-Mead simplex on an
unconstrained reparameterization (logit for probabilities, log for
positive risk parameters). The discrete parameter of the past model is
profiled out by exhaustive scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit, logit

from .cohort import Cohort, feature_arrays
from .riskmodels import (
    CANDIDATE_ORDER,
    ModelKind,
    ModelSpec,
    PARAM_NAMES,
    param_count,
    risk_values,
)

__all__ = [
    "PROB_FLOOR",
    "ModelParams",
    "FitResult",
    "FeatureHistogram",
    "SimplexConfig",
    "log_likelihood",
    "fit_null",
    "fit_current_use",
    "fit_past",
    "fit_numeric",
    "fit_model",
    "fit_all",
    "n_fit_params",
    "fit_to_dict",
    "FIT_CSV_FIELDS",
    "fit_to_csv_row",
]

PROB_FLOOR = 1e-12

# starting values for the simplex search, per risk parameter; mu and kappa
# scale with the observation length
_START_RHO = 0.5
_START_SIGMA = 2.0
_PI_START_FLOOR = 1e-6
_UNBOUNDED_CLIP = 40.0  # transformed coordinates live in [-40, 40]


@dataclass(frozen=True)
class ModelParams:
    """Fitted probability pair plus the risk-function parameter values."""

    pi0: float
    pi1: float
    risk_params: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("pi0", "pi1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        object.__setattr__(self, "risk_params", dict(self.risk_params))


@dataclass(frozen=True)
class FitResult:
    spec: ModelSpec
    params: ModelParams
    loglik: float
    n_params: int
    n_patients: int
    method: str  # "closed_form" | "simplex"
    converged: bool


@dataclass(frozen=True)
class SimplexConfig:
    """Nelder-Mead settings: one moment-based start plus jittered restarts."""

    n_starts: int = 5
    max_iter: int = 2000
    fatol: float = 1e-8
    xatol: float = 1e-8
    seed: int = 0
    jitter_scale: float = 1.0

    def __post_init__(self):
        if self.n_starts < 1:
            raise ValueError("n_starts must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")


def n_fit_params(kind: ModelKind | str) -> int:
    """Free parameter count entering the information criterion.

    q + 2 for every model except no-association, whose likelihood involves
    pi0 alone (its risk level is identically 0, so pi1 never enters).
    """
    kind = ModelKind(kind)
    if kind is ModelKind.NO_ASSOCIATION:
        return 1
    return param_count(kind) + 2


# ---------------------------------------------------------------------------
# Feature histogram


@dataclass(frozen=True)
class FeatureHistogram:
    """Cell counts grouped by feature equivalence class.

    Each class is a distinct (exposed_now, ever_exposed, tsf, tsl) tuple;
    tsf/tsl hold -1 for the never-exposed class. n_adr / n_clear count the
    cells with ADR = 1 / 0 in each class.
    """

    exposed_now: np.ndarray
    ever_exposed: np.ndarray
    tsf: np.ndarray
    tsl: np.ndarray
    n_adr: np.ndarray
    n_clear: np.ndarray
    n_patients: int
    total_cells: int
    max_timepoints: int

    @classmethod
    def from_cohort(cls, cohort: Cohort) -> "FeatureHistogram":
        tsf_parts, tsl_parts, y_parts = [], [], []
        for rec in cohort:
            _, _, tsf, tsl = feature_arrays(rec.exposure)
            tsf_parts.append(tsf)
            tsl_parts.append(tsl)
            y_parts.append(rec.adr)
        tsf = np.concatenate(tsf_parts)
        tsl = np.concatenate(tsl_parts)
        y = np.concatenate(y_parts).astype(np.int64)
        t_max = cohort.max_timepoints
        # exposed_now and ever_exposed are functions of (tsf, tsl):
        # ever <=> tsf >= 0, now <=> tsl == 0
        keys = (tsf + 1) * (t_max + 1) + (tsl + 1)
        classes, inverse = np.unique(keys, return_inverse=True)
        n_adr = np.bincount(inverse, weights=y, minlength=classes.size).astype(np.int64)
        n_clear = np.bincount(inverse, weights=1 - y, minlength=classes.size).astype(np.int64)
        c_tsf = classes // (t_max + 1) - 1
        c_tsl = classes % (t_max + 1) - 1
        return cls(
            exposed_now=(c_tsl == 0),
            ever_exposed=(c_tsf >= 0),
            tsf=c_tsf,
            tsl=c_tsl,
            n_adr=n_adr,
            n_clear=n_clear,
            n_patients=cohort.n_patients,
            total_cells=cohort.total_cells,
            max_timepoints=t_max,
        )

    @property
    def n_classes(self) -> int:
        return int(self.tsf.size)

    @property
    def total_adr(self) -> int:
        return int(self.n_adr.sum())

    def as_mapping(self) -> dict:
        """Feature tuple -> (ADR cells, no-ADR cells); None for undefined times."""
        out = {}
        for i in range(self.n_classes):
            ever = bool(self.ever_exposed[i])
            key = (
                bool(self.exposed_now[i]),
                ever,
                int(self.tsf[i]) if ever else None,
                int(self.tsl[i]) if ever else None,
            )
            out[key] = (int(self.n_adr[i]), int(self.n_clear[i]))
        return out


# ---------------------------------------------------------------------------
# Likelihood


def _bernoulli_loglik(n1, n0, prob) -> float:
    # per-factor floor keeps exact zeros exact (0 * log 0 contributes 0)
    p = np.clip(prob, PROB_FLOOR, 1.0)
    q = np.clip(1.0 - np.asarray(prob, dtype=float), PROB_FLOOR, 1.0)
    return float(np.sum(n1 * np.log(p)) + np.sum(n0 * np.log(q)))


def log_likelihood(spec: ModelSpec, params: ModelParams, hist: FeatureHistogram) -> float:
    """Cohort log-likelihood of the model evaluated over the histogram."""
    r = risk_values(spec, hist.exposed_now, hist.ever_exposed, hist.tsf, hist.tsl)
    prob = (params.pi1 - params.pi0) * r + params.pi0
    return _bernoulli_loglik(hist.n_adr, hist.n_clear, prob)


def _xlogx_ratio(n, total):
    """n * log(n / total) with the 0 log 0 = 0 convention, elementwise."""
    n = np.asarray(n, dtype=float)
    total = np.asarray(total, dtype=float)
    out = np.zeros(np.broadcast(n, total).shape)
    mask = n > 0
    np.log(np.divide(n, total, out=np.ones_like(out), where=mask), out=out, where=mask)
    return n * out


def _split_loglik(a, b, c, d) -> float:
    """Exact log-likelihood of the two-rate split (a,b | c,d) at its MLE."""
    return float(
        np.sum(_xlogx_ratio(np.array([a, b]), a + b))
        + np.sum(_xlogx_ratio(np.array([c, d]), c + d))
    )


# ---------------------------------------------------------------------------
# Closed-form fits


def fit_null(cohort: Cohort, hist: FeatureHistogram | None = None) -> FitResult:
    """No-association MLE: pi0 is the pooled ADR rate over all cells."""
    if hist is not None:
        y_total, total = hist.total_adr, hist.total_cells
        n_patients = hist.n_patients
    else:
        y_total = int(sum(int(rec.adr.sum()) for rec in cohort))
        total = cohort.total_cells
        n_patients = cohort.n_patients
    pi0 = y_total / total
    loglik = float(np.sum(_xlogx_ratio(np.array([y_total, total - y_total]), total)))
    return FitResult(
        spec=ModelSpec(ModelKind.NO_ASSOCIATION),
        params=ModelParams(pi0=pi0, pi1=pi0),
        loglik=loglik,
        n_params=n_fit_params(ModelKind.NO_ASSOCIATION),
        n_patients=n_patients,
        method="closed_form",
        converged=True,
    )


def _pin_rates(a: int, b: int, c: int, d: int, pooled: float) -> tuple[float, float]:
    # degenerate margin: the unidentified probability is pinned to the
    # pooled ADR rate (it multiplies zero cells, so the likelihood is unchanged)
    pi1 = a / (a + b) if a + b > 0 else pooled
    pi0 = c / (c + d) if c + d > 0 else pooled
    return pi1, pi0


def fit_current_use(cohort: Cohort, hist: FeatureHistogram | None = None) -> FitResult:
    """Current-use MLE from the 2x2 exposed-now contingency counts."""
    if hist is None:
        hist = FeatureHistogram.from_cohort(cohort)
    a, b, c, d = _current_counts(hist)
    pooled = hist.total_adr / hist.total_cells
    pi1, pi0 = _pin_rates(a, b, c, d, pooled)
    return FitResult(
        spec=ModelSpec(ModelKind.CURRENT_USE),
        params=ModelParams(pi0=pi0, pi1=pi1),
        loglik=_split_loglik(a, b, c, d),
        n_params=n_fit_params(ModelKind.CURRENT_USE),
        n_patients=hist.n_patients,
        method="closed_form",
        converged=True,
    )


def _current_counts(hist: FeatureHistogram) -> tuple[int, int, int, int]:
    now = hist.exposed_now
    a = int(hist.n_adr[now].sum())
    b = int(hist.n_clear[now].sum())
    return a, b, hist.total_adr - a, int(hist.n_clear.sum()) - b


def _past_window_counts(hist: FeatureHistogram) -> tuple[np.ndarray, ...]:
    """Cumulative (A, B, C, D) arrays indexed by window size p = 0..T-1."""
    t_max = hist.max_timepoints
    ever = hist.ever_exposed
    tsl = np.where(ever, hist.tsl, 0)
    in1 = np.bincount(tsl[ever], weights=hist.n_adr[ever], minlength=t_max)[:t_max]
    in0 = np.bincount(tsl[ever], weights=hist.n_clear[ever], minlength=t_max)[:t_max]
    A = np.cumsum(in1)
    B = np.cumsum(in0)
    C = hist.total_adr - A
    D = (hist.total_cells - hist.total_adr) - B
    return A, B, C, D


def _past_profile(hist: FeatureHistogram) -> tuple[np.ndarray, np.ndarray]:
    """Profile log-likelihood of the past model over p = 1..T-1."""
    A, B, C, D = _past_window_counts(hist)
    p_values = np.arange(1, hist.max_timepoints)
    A, B, C, D = A[p_values], B[p_values], C[p_values], D[p_values]
    loglik = (
        _xlogx_ratio(A, A + B)
        + _xlogx_ratio(B, A + B)
        + _xlogx_ratio(C, C + D)
        + _xlogx_ratio(D, C + D)
    )
    return p_values, loglik


def fit_past(cohort: Cohort, hist: FeatureHistogram | None = None) -> FitResult:
    """Past-exposure MLE: exhaustive scan over the window length p.

    Ties in the profile log-likelihood break toward the smaller p.
    """
    if hist is None:
        hist = FeatureHistogram.from_cohort(cohort)
    if hist.max_timepoints < 2:
        raise ValueError("past model needs at least one patient with T_k >= 2")
    p_values, profile = _past_profile(hist)
    i = int(np.argmax(profile))
    p_hat = int(p_values[i])
    A, B, C, D = (arr[p_hat] for arr in _past_window_counts(hist))
    pooled = hist.total_adr / hist.total_cells
    pi1, pi0 = _pin_rates(int(A), int(B), int(C), int(D), pooled)
    return FitResult(
        spec=ModelSpec(ModelKind.PAST, p=p_hat, horizon_T=hist.max_timepoints),
        params=ModelParams(pi0=pi0, pi1=pi1, risk_params={"p": p_hat}),
        loglik=float(profile[i]),
        n_params=n_fit_params(ModelKind.PAST),
        n_patients=hist.n_patients,
        method="closed_form",
        converged=True,
    )


# ---------------------------------------------------------------------------
# Numeric fits (Nelder-Mead on the reparameterized objective)


@dataclass(frozen=True)
class _GroupedCells:
    """Cells pooled by the one feature a model's risk actually reads.

    zero_adr / zero_clear count cells whose risk is structurally 0; vals are
    the distinct feature values of the remaining cells with their counts.
    """

    zero_adr: int
    zero_clear: int
    vals: np.ndarray
    n_adr: np.ndarray
    n_clear: np.ndarray


def _group_by(hist: FeatureHistogram, mask: np.ndarray, values: np.ndarray) -> _GroupedCells:
    z1 = hist.total_adr - int(hist.n_adr[mask].sum())
    z0 = int(hist.n_clear.sum()) - int(hist.n_clear[mask].sum())
    vals, inverse = np.unique(values[mask], return_inverse=True)
    n1 = np.bincount(inverse, weights=hist.n_adr[mask], minlength=vals.size)
    n0 = np.bincount(inverse, weights=hist.n_clear[mask], minlength=vals.size)
    return _GroupedCells(z1, z0, vals.astype(float), n1, n0)


def _grouped_for(kind: ModelKind, hist: FeatureHistogram) -> _GroupedCells:
    if kind is ModelKind.NO_ASSOCIATION:
        return _GroupedCells(
            hist.total_adr,
            hist.total_cells - hist.total_adr,
            np.empty(0),
            np.empty(0),
            np.empty(0),
        )
    if kind is ModelKind.CURRENT_USE:
        a, b, c, d = _current_counts(hist)
        return _GroupedCells(c, d, np.zeros(1), np.array([float(a)]), np.array([float(b)]))
    if kind is ModelKind.WITHDRAWAL:
        mask = hist.ever_exposed & ~hist.exposed_now
        return _group_by(hist, mask, hist.tsl)
    # remaining kinds read time-since-first-exposure over ever-exposed cells
    return _group_by(hist, hist.ever_exposed, hist.tsf)


def _risk_fn(kind: ModelKind, horizon_T: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    grid = np.arange(1, max(horizon_T, 2), dtype=float)

    def fn(xi: np.ndarray, vals: np.ndarray) -> np.ndarray:
        if kind is ModelKind.NO_ASSOCIATION:
            return np.zeros_like(vals)
        if kind in (ModelKind.CURRENT_USE, ModelKind.PAST):
            return np.ones_like(vals)
        if kind is ModelKind.WITHDRAWAL or kind is ModelKind.DECAYING:
            return np.exp(-xi[0] * vals)
        if kind is ModelKind.DELAYED:
            return np.exp(-0.5 * ((vals - xi[0]) / xi[1]) ** 2)
        if kind is ModelKind.LONG_TERM:
            return expit(xi[0] * (vals - xi[1]))
        if kind is ModelKind.DELAYED_DECAYING:
            mu, sigma, rho = xi
            c = np.max(np.exp(-0.5 * ((grid - mu) / sigma) ** 2) + np.exp(-rho * grid))
            total = np.exp(-0.5 * ((vals - mu) / sigma) ** 2) + np.exp(-rho * vals)
            return np.minimum(1.0, total / c) if c > 0 else np.full_like(vals, np.nan)
        raise ValueError(f"no numeric risk for {kind!r}")

    return fn


def _objective(kind: ModelKind, grouped: _GroupedCells, horizon_T: int):
    risk_fn = _risk_fn(kind, horizon_T)
    z1, z0 = grouped.zero_adr, grouped.zero_clear
    vals, n1, n0 = grouped.vals, grouped.n_adr, grouped.n_clear

    def neg_loglik(u: np.ndarray) -> float:
        pi0 = float(expit(u[0]))
        pi1 = float(expit(u[1]))
        xi = np.exp(np.clip(u[2:], -_UNBOUNDED_CLIP, _UNBOUNDED_CLIP))
        with np.errstate(all="ignore"):
            prob = (pi1 - pi0) * risk_fn(xi, vals) + pi0
            ll = _bernoulli_loglik(n1, n0, prob)
            ll += z1 * math.log(max(pi0, PROB_FLOOR)) + z0 * math.log(max(1.0 - pi0, PROB_FLOOR))
        return -ll if math.isfinite(ll) else math.inf

    return neg_loglik


def _start_point(kind: ModelKind, hist: FeatureHistogram, horizon_T: int) -> np.ndarray:
    pooled = hist.total_adr / hist.total_cells
    never = ~hist.ever_exposed
    n_never = int(hist.n_adr[never].sum() + hist.n_clear[never].sum())
    pi0_0 = hist.n_adr[never].sum() / n_never if n_never else pooled
    now = hist.exposed_now
    n_now = int(hist.n_adr[now].sum() + hist.n_clear[now].sum())
    pi1_0 = hist.n_adr[now].sum() / n_now if n_now else pooled
    lo, hi = _PI_START_FLOOR, 1.0 - _PI_START_FLOOR
    u = [logit(min(max(pi0_0, lo), hi)), logit(min(max(pi1_0, lo), hi))]
    defaults = {
        "rho": _START_RHO,
        "mu": horizon_T / 10.0,
        "sigma": _START_SIGMA,
        "kappa": horizon_T / 4.0,
    }
    u += [math.log(defaults[name]) for name in PARAM_NAMES[kind] if name != "p"]
    return np.array(u, dtype=float)


def _params_from_u(kind: ModelKind, u: np.ndarray, horizon_T: int) -> tuple[ModelParams, ModelSpec]:
    pi0 = float(expit(u[0]))
    pi1 = float(expit(u[1]))
    names = [n for n in PARAM_NAMES[kind] if n != "p"]
    xi = np.exp(np.clip(u[2:], -_UNBOUNDED_CLIP, _UNBOUNDED_CLIP))
    risk_params = {name: float(v) for name, v in zip(names, xi)}
    spec_kwargs = dict(risk_params)
    if kind is ModelKind.DELAYED_DECAYING:
        spec_kwargs["horizon_T"] = horizon_T
    spec = ModelSpec(kind, **spec_kwargs)
    return ModelParams(pi0=pi0, pi1=pi1, risk_params=risk_params), spec


_KIND_INDEX = {kind: i for i, kind in enumerate(ModelKind)}


def _simplex_search(
    neg_loglik, u0: np.ndarray, config: SimplexConfig, rng: np.random.Generator
) -> tuple[np.ndarray, float, bool]:
    best_u, best_f, converged = u0, math.inf, False
    for start in range(config.n_starts):
        u_start = u0 if start == 0 else u0 + rng.normal(0.0, config.jitter_scale, size=u0.size)
        if not math.isfinite(neg_loglik(u_start)):
            continue
        res = minimize(
            neg_loglik,
            u_start,
            method="Nelder-Mead",
            options={
                "maxiter": config.max_iter,
                "maxfev": config.max_iter,
                "xatol": config.xatol,
                "fatol": config.fatol,
            },
        )
        converged = converged or bool(res.success)
        if res.fun < best_f:
            best_u, best_f = res.x, float(res.fun)
    return best_u, best_f, converged


def fit_numeric(
    kind: ModelKind | str,
    cohort: Cohort,
    config: SimplexConfig | None = None,
    hist: FeatureHistogram | None = None,
) -> FitResult:
    """Maximize the model's likelihood with a multi-start Nelder-Mead search.

    Probabilities are searched on the logit scale and positive risk
    parameters on the log scale, so the simplex is unconstrained. The
    past model's discrete window is handled by an outer exhaustive scan
    with the two probabilities optimized numerically per window. The
    nested null point (pi1 = pi0 = pooled rate) is always evaluated as a
    fallback candidate, so the returned log-likelihood never falls below
    the null model's.
    """
    kind = ModelKind(kind)
    config = config or SimplexConfig()
    if hist is None:
        hist = FeatureHistogram.from_cohort(cohort)
    horizon_T = hist.max_timepoints
    rng = np.random.default_rng(np.random.SeedSequence((config.seed, _KIND_INDEX[kind])))

    if kind is ModelKind.PAST:
        return _fit_numeric_past(hist, config, rng)

    grouped = _grouped_for(kind, hist)
    neg_loglik = _objective(kind, grouped, horizon_T)
    u0 = _start_point(kind, hist, horizon_T)
    best_u, best_f, converged = _simplex_search(neg_loglik, u0, config, rng)

    # nested-null fallback candidate
    pooled = hist.total_adr / hist.total_cells
    u_pool = logit(min(max(pooled, _PI_START_FLOOR), 1.0 - _PI_START_FLOOR))
    u_null = np.concatenate([[u_pool, u_pool], u0[2:]])
    f_null = neg_loglik(u_null)
    if f_null < best_f:
        best_u, best_f = u_null, f_null

    if not math.isfinite(best_f):
        raise RuntimeError(f"non-finite objective at every start point for {kind}")
    params, spec = _params_from_u(kind, best_u, horizon_T)
    return FitResult(
        spec=spec,
        params=params,
        loglik=-best_f,
        n_params=n_fit_params(kind),
        n_patients=hist.n_patients,
        method="simplex",
        converged=converged,
    )


def _fit_numeric_past(
    hist: FeatureHistogram, config: SimplexConfig, rng: np.random.Generator
) -> FitResult:
    if hist.max_timepoints < 2:
        raise ValueError("past model needs at least one patient with T_k >= 2")
    A, B, C, D = _past_window_counts(hist)
    u0 = _start_point(ModelKind.PAST, hist, hist.max_timepoints)
    jitters = [rng.normal(0.0, config.jitter_scale, size=2) for _ in range(config.n_starts - 1)]
    pooled = hist.total_adr / hist.total_cells
    u_pool = logit(min(max(pooled, _PI_START_FLOOR), 1.0 - _PI_START_FLOOR))
    u_null = np.array([u_pool, u_pool])
    best: tuple[float, int, np.ndarray, bool] | None = None
    for p in range(1, hist.max_timepoints):
        grouped = _GroupedCells(
            int(C[p]), int(D[p]), np.zeros(1), np.array([A[p]], float), np.array([B[p]], float)
        )
        neg_loglik = _objective(ModelKind.PAST, grouped, hist.max_timepoints)
        sub_best = neg_loglik(u_null)
        sub_u = u_null
        sub_conv = False
        for start in range(config.n_starts):
            u_start = u0 if start == 0 else u0 + jitters[start - 1]
            res = minimize(
                neg_loglik,
                u_start,
                method="Nelder-Mead",
                options={
                    "maxiter": config.max_iter,
                    "maxfev": config.max_iter,
                    "xatol": config.xatol,
                    "fatol": config.fatol,
                },
            )
            sub_conv = sub_conv or bool(res.success)
            if res.fun < sub_best:
                sub_best, sub_u = float(res.fun), res.x
        if best is None or sub_best < best[0]:
            best = (sub_best, p, sub_u, sub_conv)
    f_best, p_hat, u_best, converged = best
    pi0, pi1 = float(expit(u_best[0])), float(expit(u_best[1]))
    return FitResult(
        spec=ModelSpec(ModelKind.PAST, p=p_hat, horizon_T=hist.max_timepoints),
        params=ModelParams(pi0=pi0, pi1=pi1, risk_params={"p": p_hat}),
        loglik=-f_best,
        n_params=n_fit_params(ModelKind.PAST),
        n_patients=hist.n_patients,
        method="simplex",
        converged=converged,
    )


# ---------------------------------------------------------------------------
# Dispatch


def fit_model(
    kind: ModelKind | str,
    cohort: Cohort,
    config: SimplexConfig | None = None,
    hist: FeatureHistogram | None = None,
) -> FitResult:
    """Fit one model, closed-form where available, simplex otherwise."""
    kind = ModelKind(kind)
    if kind is ModelKind.NO_ASSOCIATION:
        return fit_null(cohort, hist=hist)
    if kind is ModelKind.CURRENT_USE:
        return fit_current_use(cohort, hist=hist)
    if kind is ModelKind.PAST:
        return fit_past(cohort, hist=hist)
    return fit_numeric(kind, cohort, config=config, hist=hist)


def fit_all(
    cohort: Cohort,
    kinds=None,
    config: SimplexConfig | None = None,
) -> list[FitResult]:
    """Fit a set of candidate models over one shared feature histogram."""
    hist = FeatureHistogram.from_cohort(cohort)
    return [fit_model(kind, cohort, config=config, hist=hist) for kind in (kinds or CANDIDATE_ORDER)]


# ---------------------------------------------------------------------------
# Serialization

FIT_CSV_FIELDS = (
    "kind",
    "pi0",
    "pi1",
    "risk_params",
    "loglik",
    "n_params",
    "n_patients",
    "method",
    "converged",
)


def fit_to_dict(fit: FitResult) -> dict:
    return {
        "kind": fit.spec.kind.value,
        "pi0": fit.params.pi0,
        "pi1": fit.params.pi1,
        "risk_params": fit.params.risk_params,
        "loglik": fit.loglik,
        "n_params": fit.n_params,
        "n_patients": fit.n_patients,
        "method": fit.method,
        "converged": fit.converged,
    }


def fit_to_csv_row(fit: FitResult) -> list:
    d = fit_to_dict(fit)
    d["risk_params"] = " ".join(f"{k}={v}" for k, v in sorted(d["risk_params"].items()))
    return [d[name] for name in FIT_CSV_FIELDS]
