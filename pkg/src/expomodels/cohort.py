"""Longitudinal cohort data model: per-patient binary exposure/ADR series.

A cohort holds one drug-ADR pair observed over time for N patients. Patient
k contributes two binary vectors of identical length T_k: exposure (1 = the
patient was exposed to the drug at that time point) and adr (1 = the adverse
event occurred). Observation is gapless: every t in 1..T_k is present.

The canonical file format is long CSV, one row per patient-time cell:

    patient_id,t,exposed,adr
    p1,1,1,0
    p1,2,0,1

Rows may appear in any order; t is 1-based and must cover 1..T_k without
gaps or duplicates for every patient.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

__all__ = [
    "CohortFormatError",
    "PatientRecord",
    "Cohort",
    "ExposureFeatures",
    "ContingencyCounts",
    "parse_cohort",
    "read_cohort_csv",
    "write_cohort_csv",
    "cohort_to_bitstrings",
    "features_at",
    "feature_arrays",
    "contingency_current",
    "contingency_past",
]

CSV_HEADER = ("patient_id", "t", "exposed", "adr")


class CohortFormatError(ValueError):
    """A cohort CSV stream violates the long-format contract."""


def _as_binary_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-D sequence")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} entries must all be 0 or 1")
    out = arr.astype(np.uint8)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PatientRecord:
    """One patient's paired exposure/ADR series (length T_k >= 1)."""

    patient_id: str
    exposure: np.ndarray
    adr: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "exposure", _as_binary_array(self.exposure, "exposure"))
        object.__setattr__(self, "adr", _as_binary_array(self.adr, "adr"))
        if self.exposure.shape != self.adr.shape:
            raise ValueError(
                f"patient {self.patient_id!r}: exposure and adr lengths differ "
                f"({self.exposure.size} vs {self.adr.size})"
            )

    @property
    def n_timepoints(self) -> int:
        return int(self.exposure.size)


@dataclass(frozen=True)
class Cohort:
    """Ordered collection of patients for a single drug-ADR pair."""

    patients: tuple[PatientRecord, ...]
    pair_label: tuple[str, str] = ("drug", "adr")

    def __post_init__(self):
        object.__setattr__(self, "patients", tuple(self.patients))
        object.__setattr__(self, "pair_label", tuple(self.pair_label))
        if len(self.patients) < 1:
            raise ValueError("a cohort needs at least one patient")
        ids = [p.patient_id for p in self.patients]
        if len(set(ids)) != len(ids):
            raise ValueError("patient_ids must be unique within a cohort")

    @property
    def n_patients(self) -> int:
        return len(self.patients)

    @property
    def total_cells(self) -> int:
        """Total number of patient-time cells, sum of T_k."""
        return sum(p.n_timepoints for p in self.patients)

    @property
    def max_timepoints(self) -> int:
        return max(p.n_timepoints for p in self.patients)

    def __iter__(self):
        return iter(self.patients)


@dataclass(frozen=True)
class ExposureFeatures:
    """Exposure-history summary at one time point.

    time_since_first / time_since_last are None until the patient has been
    exposed at least once; time_since_last counts the current time point, so
    it is 0 whenever exposed_now is True.
    """

    exposed_now: bool
    ever_exposed: bool
    time_since_first: int | None = None
    time_since_last: int | None = None

    def __post_init__(self):
        if not self.ever_exposed:
            if self.exposed_now:
                raise ValueError("exposed_now requires ever_exposed")
            if self.time_since_first is not None or self.time_since_last is not None:
                raise ValueError("time-since features are undefined before first exposure")
            return
        if self.time_since_first is None or self.time_since_last is None:
            raise ValueError("time-since features required once ever_exposed")
        if not (0 <= self.time_since_last <= self.time_since_first):
            raise ValueError("need 0 <= time_since_last <= time_since_first")
        if self.exposed_now and self.time_since_last != 0:
            raise ValueError("time_since_last must be 0 while exposed")


@dataclass(frozen=True)
class ContingencyCounts:
    """2x2 patient-time cell counts: (exposed?, ADR?) cross-classification."""

    a: int  # exposed, ADR
    b: int  # exposed, no ADR
    c: int  # unexposed, ADR
    d: int  # unexposed, no ADR

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            if getattr(self, name) < 0:
                raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d


# ---------------------------------------------------------------------------
# CSV ingestion / export


def parse_cohort(source: IO[str] | Iterable[str], pair_label: tuple[str, str]) -> Cohort:
    """Parse the long-CSV cohort format from a character stream.

    The header row is mandatory. Rows may arrive in any order, but for every
    patient the time index must cover 1..T_k contiguously; gaps, duplicates,
    and non-binary exposed/adr values are errors.
    """
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise CohortFormatError("empty stream: missing header") from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise CohortFormatError(
            f"bad header {header!r}: expected {','.join(CSV_HEADER)}"
        )

    rows: dict[str, dict[int, tuple[int, int]]] = {}
    order: list[str] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise CohortFormatError(f"line {lineno}: expected 4 fields, got {len(row)}")
        pid, t_raw, x_raw, y_raw = (field.strip() for field in row)
        try:
            t = int(t_raw)
        except ValueError:
            raise CohortFormatError(f"line {lineno}: non-integer time index {t_raw!r}") from None
        if t < 1:
            raise CohortFormatError(f"line {lineno}: time index must be >= 1, got {t}")
        if x_raw not in ("0", "1") or y_raw not in ("0", "1"):
            raise CohortFormatError(
                f"line {lineno}: exposed/adr must be 0 or 1, got {x_raw!r},{y_raw!r}"
            )
        per_patient = rows.get(pid)
        if per_patient is None:
            per_patient = rows[pid] = {}
            order.append(pid)
        if t in per_patient:
            raise CohortFormatError(f"line {lineno}: duplicate cell ({pid!r}, t={t})")
        per_patient[t] = (int(x_raw), int(y_raw))

    if not rows:
        raise CohortFormatError("no data rows: a cohort needs at least one patient")

    patients = []
    for pid in order:
        cells = rows[pid]
        t_max = max(cells)
        missing = [t for t in range(1, t_max + 1) if t not in cells]
        if missing:
            raise CohortFormatError(f"patient {pid!r}: gap in time index at t={missing[0]}")
        exposure = np.fromiter((cells[t][0] for t in range(1, t_max + 1)), dtype=np.uint8)
        adr = np.fromiter((cells[t][1] for t in range(1, t_max + 1)), dtype=np.uint8)
        patients.append(PatientRecord(pid, exposure, adr))
    return Cohort(tuple(patients), pair_label)


def read_cohort_csv(path, pair_label: tuple[str, str] | None = None) -> Cohort:
    """Load a cohort file; pair_label defaults to the file stem split on '__'."""
    import pathlib

    p = pathlib.Path(path)
    if pair_label is None:
        stem = p.stem
        pair_label = tuple(stem.split("__", 1)) if "__" in stem else (stem, "adr")
    with open(p, newline="", encoding="utf-8") as fh:
        return parse_cohort(fh, pair_label)


def write_cohort_csv(cohort: Cohort, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for rec in cohort:
            for t in range(rec.n_timepoints):
                writer.writerow([rec.patient_id, t + 1, int(rec.exposure[t]), int(rec.adr[t])])


def cohort_to_bitstrings(cohort: Cohort) -> list[str]:
    """Compact per-patient view, debugging only (not a supported format)."""
    return [
        f"{rec.patient_id} x={''.join(map(str, rec.exposure))} y={''.join(map(str, rec.adr))}"
        for rec in cohort
    ]


# ---------------------------------------------------------------------------
# Exposure features


def features_at(exposure: Sequence[int] | np.ndarray, t: int) -> ExposureFeatures:
    """Summarize the exposure prefix up to 1-based time point t."""
    arr = np.asarray(exposure)
    if not 1 <= t <= arr.size:
        raise IndexError(f"t={t} out of range 1..{arr.size}")
    prefix = arr[:t]
    hits = np.flatnonzero(prefix > 0)
    if hits.size == 0:
        return ExposureFeatures(exposed_now=False, ever_exposed=False)
    return ExposureFeatures(
        exposed_now=bool(prefix[t - 1] > 0),
        ever_exposed=True,
        time_since_first=int(t - 1 - hits[0]),
        time_since_last=int(t - 1 - hits[-1]),
    )


def feature_arrays(exposure: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized features_at over every time point of one series.

    Returns (exposed_now, ever_exposed, time_since_first, time_since_last);
    the two time arrays hold -1 wherever ever_exposed is False.
    """
    x = np.asarray(exposure)
    n = x.size
    idx = np.arange(n)
    exposed = x > 0
    ever = np.cumsum(exposed) > 0
    first = int(np.argmax(exposed)) if ever[-1] else 0
    tsf = np.where(ever, idx - first, -1)
    last_seen = np.maximum.accumulate(np.where(exposed, idx, -(n + 1)))
    tsl = np.where(ever, idx - last_seen, -1)
    return exposed, ever, tsf, tsl


# ---------------------------------------------------------------------------
# Contingency counts


def _tally(cohort: Cohort, exposed_criterion) -> ContingencyCounts:
    a = b = c = d = 0
    for rec in cohort:
        now, ever, tsf, tsl = feature_arrays(rec.exposure)
        crit = exposed_criterion(now, ever, tsf, tsl)
        y = rec.adr > 0
        a += int(np.sum(crit & y))
        b += int(np.sum(crit & ~y))
        c += int(np.sum(~crit & y))
        d += int(np.sum(~crit & ~y))
    return ContingencyCounts(a, b, c, d)


def contingency_current(cohort: Cohort) -> ContingencyCounts:
    """Cross-classify every cell by current exposure vs ADR occurrence."""
    return _tally(cohort, lambda now, ever, tsf, tsl: now)


def _contingency_window(cohort: Cohort, p: int) -> ContingencyCounts:
    # window criterion: exposed at some point in the last p+1 time points
    # (including t itself); p=0 reduces to current exposure
    if p < 0:
        raise ValueError("window size p must be >= 0")
    return _tally(cohort, lambda now, ever, tsf, tsl: ever & (tsl <= p))


def contingency_past(cohort: Cohort, p: int) -> ContingencyCounts:
    """Cross-classify cells by exposure within the last p time points.

    A cell (k, t) counts as exposed when the patient was exposed at any of
    the time points max(1, t-p)..t.
    """
    if not 1 <= p <= cohort.max_timepoints - 1:
        raise ValueError(f"p={p} out of range 1..{cohort.max_timepoints - 1}")
    return _contingency_window(cohort, p)
