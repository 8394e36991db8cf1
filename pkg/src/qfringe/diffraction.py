"""Propagation of a source mode operator through point slits to a screen.

The mode operator at a detection point is the source operator multiplied by
a complex transfer coefficient, one spherical-wave leg per slit:

    value = sum_j exp(i k s_j) / s_j * exp(i k r_j) / r_j

with s_j the source-to-slit distance and r_j the slit-to-detector distance.
Detected intensity is |value|^2 times the mean occupation of the source
mode, so the fringe pattern is a statement about number operators and holds
for any source state.

Geometry is two-dimensional: points are (x, z) pairs in meters, slits sit
on the z = 0 plane, the source below it, the screen plane above it. Path
lengths are exact Euclidean distances; the far-field fringe drops the
1/r amplitude factors but keeps the exact path difference in the phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockSpace, QuantumState, dagger, expectation, fermionic_mode_ops, fock_state
from .tableio import csv_text, json_document


class DegenerateGeometryError(RuntimeError):
    """A propagation leg has zero length, e.g. the detector sits on a slit."""


def wavenumber(wavelength: float) -> float:
    if wavelength <= 0.0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    return 2.0 * math.pi / wavelength


@dataclass(frozen=True)
class SlitGeometry:
    """Source point, slit points on z = 0, screen plane z = screen_z, wavenumber k.

    Slits may be given as bare x coordinates or as (x, 0) pairs. All lengths
    are in meters, k in 1/meters.
    """

    source: tuple[float, float]
    slits: tuple[tuple[float, float], ...]
    screen_z: float
    k: float

    def __post_init__(self):
        source = (float(self.source[0]), float(self.source[1]))
        slits = []
        for item in self.slits:
            if np.ndim(item) == 0:
                slits.append((float(item), 0.0))
            else:
                x, z = item
                if float(z) != 0.0:
                    raise ValueError("slit points must lie on the z = 0 plane")
                slits.append((float(x), 0.0))
        if not slits:
            raise ValueError("geometry needs at least one slit")
        if len({x for x, _ in slits}) != len(slits):
            raise ValueError("slit points must be distinct")
        if not source[1] < 0.0:
            raise ValueError("source must sit below the slit plane (z < 0)")
        if not float(self.screen_z) > 0.0:
            raise ValueError("screen must sit above the slit plane (z > 0)")
        if not float(self.k) > 0.0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "slits", tuple(slits))
        object.__setattr__(self, "screen_z", float(self.screen_z))
        object.__setattr__(self, "k", float(self.k))

    @property
    def slit_count(self) -> int:
        return len(self.slits)


@dataclass(frozen=True)
class TransferAmplitude:
    """Complex coefficient relating the source operator to the detector point."""

    value: complex
    per_slit_terms: tuple[complex, ...]

    def __post_init__(self):
        total = sum(self.per_slit_terms)
        scale = max(abs(self.value), abs(total), 1e-300)
        if abs(self.value - total) > 1e-14 * scale:
            raise ValueError("value must equal the sum of per-slit terms")


def path_lengths(geom: SlitGeometry, x_detector: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact distances source -> slit_j and slit_j -> (x_detector, screen_z)."""
    sx, sz = geom.source
    x_d = float(x_detector)
    s = np.array([math.sqrt((x - sx) ** 2 + sz**2) for x, _ in geom.slits])
    r = np.array([math.sqrt((x_d - x) ** 2 + geom.screen_z**2) for x, _ in geom.slits])
    return s, r


def transfer_amplitude(geom: SlitGeometry, x_detector: float) -> TransferAmplitude:
    s, r = path_lengths(geom, x_detector)
    if np.any(s == 0.0) or np.any(r == 0.0):
        raise DegenerateGeometryError(
            f"zero-length propagation leg at x_detector = {x_detector}"
        )
    terms = tuple(
        complex(np.exp(1j * geom.k * (sj + rj)) / (sj * rj)) for sj, rj in zip(s, r)
    )
    return TransferAmplitude(value=complex(sum(terms)), per_slit_terms=terms)


def _mean_occupation(state: QuantumState) -> float:
    n = np.diag(np.arange(state.dim, dtype=float)).astype(complex)
    return expectation(state, n).real


def intensity_expectation(state: QuantumState, geom: SlitGeometry, x_detector: float) -> float:
    """Mean occupation at the detector point: |transfer|^2 times source occupation."""
    amp = transfer_amplitude(geom, x_detector)
    return abs(amp.value) ** 2 * _mean_occupation(state)


def _require_two_slits(geom: SlitGeometry, name: str) -> None:
    if geom.slit_count != 2:
        raise ValueError(f"{name} requires exactly 2 slits, got {geom.slit_count}")


def _far_field_point(geom: SlitGeometry, x_detector: float) -> float:
    _, r = path_lengths(geom, x_detector)
    delta = r[0] - r[1]
    return 0.5 * (1.0 + math.cos(geom.k * delta))


def single_photon_fringe(geom: SlitGeometry, x_detector, mode: str = "far_field"):
    """Two-slit detection probability for a single source photon.

    far_field: (1 + cos(k dr)) / 2 with dr the exact path difference and the
    1/r amplitude factors dropped into the overall normalization.
    exact: full intensity on |1>, normalized to its maximum over the supplied
    detector points (so array input defines the scan it is normalized on).
    """
    _require_two_slits(geom, "single_photon_fringe")
    xs = np.atleast_1d(np.asarray(x_detector, dtype=float))
    if mode == "far_field":
        values = np.array([_far_field_point(geom, x) for x in xs])
    elif mode == "exact":
        photon = fock_state(FockSpace(2), 1)
        raw = np.array([intensity_expectation(photon, geom, x) for x in xs])
        peak = raw.max()
        values = raw / peak if peak > 0.0 else raw
    else:
        raise ValueError(f"mode must be 'far_field' or 'exact', got {mode!r}")
    if np.ndim(x_detector) == 0:
        return float(values[0])
    return values


@dataclass(frozen=True)
class FringeTable:
    """Screen scan: detector position, normalized probability, raw intensity."""

    x: np.ndarray
    probability: np.ndarray
    raw_intensity: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        p = np.asarray(self.probability, dtype=float)
        raw = np.asarray(self.raw_intensity, dtype=float)
        if not (x.shape == p.shape == raw.shape) or x.ndim != 1:
            raise ValueError("columns must be 1-d arrays of equal length")
        if p.size and (p.min() < 0.0 or p.max() > 1.0 + 1e-12):
            raise ValueError("probabilities must lie in [0, 1]")
        for arr in (x, p, raw):
            arr.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "probability", p)
        object.__setattr__(self, "raw_intensity", raw)

    def __len__(self) -> int:
        return self.x.size

    def rows(self):
        return zip(self.x.tolist(), self.probability.tolist(), self.raw_intensity.tolist())

    def to_csv(self) -> str:
        return csv_text(("x_D", "probability", "raw_intensity"), self.rows())

    def to_json(self) -> str:
        return json_document(
            [
                {"x_D": x, "probability": p, "raw_intensity": raw}
                for x, p, raw in self.rows()
            ]
        )


def fringe_scan(
    geom: SlitGeometry,
    x_min: float,
    x_max: float,
    n_points: int,
    mode: str = "exact",
    state: QuantumState | None = None,
) -> FringeTable:
    """Uniform scan of the screen; each row is computed independently.

    The raw intensity column always carries the exact |transfer|^2 times the
    source occupation; the probability column is the selected fringe law
    (exact rows are normalized to the scan maximum).
    """
    if n_points < 2:
        raise ValueError(f"n_points must be at least 2, got {n_points}")
    if not x_max > x_min:
        raise ValueError("x_max must exceed x_min")
    if state is None:
        state = fock_state(FockSpace(2), 1)
    xs = np.linspace(float(x_min), float(x_max), int(n_points))
    raw = np.array([intensity_expectation(state, geom, x) for x in xs])
    if mode == "far_field":
        probs = single_photon_fringe(geom, xs, mode="far_field")
    elif mode == "exact":
        peak = raw.max()
        probs = raw / peak if peak > 0.0 else raw.copy()
    else:
        raise ValueError(f"mode must be 'far_field' or 'exact', got {mode!r}")
    return FringeTable(x=xs, probability=probs, raw_intensity=raw)


def fermionic_fringe(geom: SlitGeometry, x_detector):
    """Two-slit fringe carried by anticommuting slit modes.

    The two slit modes hold one shared excitation, (|0,1> + |1,0>)/sqrt(2);
    the detector mode is the normalized combination of the per-slit transfer
    terms. Returns the expected detector occupation, which reproduces the
    bosonic single-photon fringe.
    """
    _require_two_slits(geom, "fermionic_fringe")
    ops, space = fermionic_mode_ops(2)
    vec = np.zeros(space.dim, dtype=complex)
    vec[space.index((0, 1))] = 1.0 / math.sqrt(2.0)
    vec[space.index((1, 0))] = 1.0 / math.sqrt(2.0)
    state = QuantumState("pure", vec)
    xs = np.atleast_1d(np.asarray(x_detector, dtype=float))
    values = np.empty(xs.size)
    for i, x in enumerate(xs):
        s, r = path_lengths(geom, x)
        if np.any(s == 0.0) or np.any(r == 0.0):
            raise DegenerateGeometryError(
                f"zero-length propagation leg at x_detector = {x}"
            )
        # The detector mode is defined up to a global phase; dropping the
        # shortest leg of each stage keeps exp() arguments small so the
        # relative phase between the slits survives in double precision.
        t = np.exp(1j * geom.k * ((s - s.min()) + (r - r.min()))) / (s * r)
        detector = (t[0] * ops[0] + t[1] * ops[1]) / math.sqrt(
            float(np.sum(np.abs(t) ** 2))
        )
        values[i] = expectation(state, dagger(detector) @ detector).real
    if np.ndim(x_detector) == 0:
        return float(values[0])
    return values
