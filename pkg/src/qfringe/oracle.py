"""Independent Schrodinger-picture computations and the verification suite.

Every result produced by the propagation and qubit pipelines has a
counterpart here, computed by evolving states instead of operators. The
matrix exponentials come from the eigendecomposition of the Hermitian
Hamiltonian, which is exact at these sizes and leaves no convergence knob
on the oracle side. The registered checks are deterministic, so repeated
verification runs produce identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
import scipy.linalg

from . import diffraction, qubit
from .fock import (
    FockSpace,
    QuantumState,
    annihilation_op,
    anticommutator,
    coherent_state,
    commutator,
    creation_op,
    dagger,
    expectation,
    fermionic_mode_ops,
    fock_state,
    number_op,
)
from .tableio import json_document

_SUITE_SEED = 20260809


def _require_hermitian(h: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("Hamiltonian must be a square matrix")
    if np.max(np.abs(h - h.conj().T)) > tol:
        raise ValueError("Hamiltonian must be Hermitian")
    return h


def unitary_evolution(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) via eigendecomposition of the Hermitian H."""
    h = _require_hermitian(h)
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * evals * float(t))) @ evecs.conj().T


def schrodinger_evolve(state, h: np.ndarray, t: float):
    """Evolve a state vector or density matrix by exp(-i H t)."""
    u = unitary_evolution(h, t)
    if isinstance(state, QuantumState):
        if state.kind == "pure":
            return QuantumState("pure", u @ state.data, lost_weight=state.lost_weight)
        return QuantumState(
            "mixed", u @ state.data @ u.conj().T, lost_weight=state.lost_weight
        )
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return u @ arr
    return u @ arr @ u.conj().T


def heisenberg_conjugate(op: np.ndarray, h: np.ndarray, t: float) -> np.ndarray:
    u = unitary_evolution(h, t)
    return u.conj().T @ np.asarray(op, dtype=complex) @ u


def picture_equivalence_check(op: np.ndarray, state, h: np.ndarray, t: float) -> float:
    """|<psi(t)|A|psi(t)> - <psi(0)|U* A U|psi(0)>| with both sides independent.

    The state side uses the eigendecomposition propagator; the operator side
    uses scipy's Pade matrix exponential, so agreement is a genuine
    cross-check rather than a reuse of one code path.
    """
    op = np.asarray(op, dtype=complex)
    evolved = schrodinger_evolve(state, h, t)
    lhs = expectation(evolved, op)
    u = scipy.linalg.expm(-1j * float(t) * _require_hermitian(h))
    rhs = expectation(state, u.conj().T @ op @ u)
    return abs(lhs - rhs)


def slit_mode_oracle(geom: diffraction.SlitGeometry, x_detector):
    """Schrodinger-picture two-slit model with one shared excitation.

    The slit modes hold (|0,1> + |1,0>)/sqrt(2); the detector mode is the
    normalized combination of the slit operators weighted by the slit-to-
    detector legs. Returns the expected detector occupation.
    """
    if geom.slit_count != 2:
        raise ValueError(f"slit_mode_oracle requires exactly 2 slits, got {geom.slit_count}")
    space = FockSpace(cutoff=2, mode_count=2)
    a1 = annihilation_op(space, 0)
    a2 = annihilation_op(space, 1)
    vec = np.zeros(space.dim, dtype=complex)
    vec[space.index((0, 1))] = 1.0 / math.sqrt(2.0)
    vec[space.index((1, 0))] = 1.0 / math.sqrt(2.0)
    state = QuantumState("pure", vec)
    xs = np.atleast_1d(np.asarray(x_detector, dtype=float))
    values = np.empty(xs.size)
    for i, x in enumerate(xs):
        _, r = diffraction.path_lengths(geom, x)
        if np.any(r == 0.0):
            raise diffraction.DegenerateGeometryError(
                f"zero-length propagation leg at x_detector = {x}"
            )
        # Common phase dropped (the detector mode is defined up to a global
        # phase) so the slit-leg phase difference survives double precision.
        weights = np.exp(1j * geom.k * (r - r.min())) / r
        detector = (weights[0] * a1 + weights[1] * a2) / math.sqrt(
            float(np.sum(np.abs(weights) ** 2))
        )
        values[i] = expectation(state, dagger(detector) @ detector).real
    if np.ndim(x_detector) == 0:
        return float(values[0])
    return values


def transition_probability_oracle(params: qubit.QubitModelParams, t: float) -> float:
    """|<-|exp(-i H t)|+>|^2 on the full two-mode space; equals sin^2(omega t/2)."""
    h = qubit.hamiltonian(params)
    evolved = schrodinger_evolve(qubit.plus_state(params), h, t)
    amp = complex(np.vdot(qubit.minus_state(params).data, evolved.data))
    return abs(amp) ** 2


@dataclass(frozen=True)
class AmplitudeRecord:
    """Transition amplitude <b, t2 | a, t1> between labeled endpoint states."""

    bra_label: str
    ket_label: str
    t1: float
    t2: float
    amplitude: complex

    def __post_init__(self):
        if abs(self.amplitude) > 1.0 + 1e-12:
            raise ValueError("amplitude modulus exceeds 1 for normalized endpoints")


def transition_amplitude(
    bra_label: str,
    ket_label: str,
    h: np.ndarray,
    t1: float,
    t2: float,
    states: Mapping[str, np.ndarray],
) -> AmplitudeRecord:
    bra = np.asarray(states[bra_label], dtype=complex)
    ket = np.asarray(states[ket_label], dtype=complex)
    u = unitary_evolution(h, t2 - t1)
    return AmplitudeRecord(
        bra_label=bra_label,
        ket_label=ket_label,
        t1=float(t1),
        t2=float(t2),
        amplitude=complex(np.vdot(bra, u @ ket)),
    )


def amplitude_variation_check(
    a_label: str,
    b_label: str,
    h: np.ndarray,
    t1: float,
    t2: float,
    eps: float,
    states: Mapping[str, np.ndarray],
) -> float:
    """Residual of the time variation of the transition amplitude.

    Compares the centered finite difference of <b|exp(-iH(t2-t1))|a> in t2
    against the generator form -i <b|H exp(-iH(t2-t1))|a>; the residual
    scales as eps^2.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    h = _require_hermitian(h)
    bra = np.asarray(states[b_label], dtype=complex)
    ket = np.asarray(states[a_label], dtype=complex)
    tau = float(t2) - float(t1)

    def amplitude(dt: float) -> complex:
        return complex(np.vdot(bra, unitary_evolution(h, dt) @ ket))

    finite_difference = (amplitude(tau + eps) - amplitude(tau - eps)) / (2.0 * eps)
    generator = -1j * complex(np.vdot(bra, h @ (unitary_evolution(h, tau) @ ket)))
    return abs(finite_difference - generator)


@dataclass(frozen=True)
class VerificationCheck:
    check: str
    max_deviation: float
    tolerance: float
    passed: bool


def _check(name: str, deviation: float, tolerance: float) -> VerificationCheck:
    deviation = float(deviation)
    return VerificationCheck(
        check=name,
        max_deviation=deviation,
        tolerance=tolerance,
        passed=deviation <= tolerance,
    )


def _canonical_geometry() -> diffraction.SlitGeometry:
    return diffraction.SlitGeometry(
        source=(0.0, -1.0),
        slits=(-5e-6, 5e-6),
        screen_z=1.0,
        k=diffraction.wavenumber(500e-9),
    )


def _qubit_states(params: qubit.QubitModelParams) -> dict[str, np.ndarray]:
    return {
        "+": qubit.plus_state(params).data,
        "-": qubit.minus_state(params).data,
    }


def run_verification_suite() -> list[VerificationCheck]:
    """Run every registered differential and invariant check, in fixed order."""
    rng = np.random.default_rng(_SUITE_SEED)
    checks: list[VerificationCheck] = []

    def random_hermitian(dim: int) -> np.ndarray:
        m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        return (m + m.conj().T) / 2.0

    def random_pure(dim: int) -> QuantumState:
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return QuantumState("pure", v / np.linalg.norm(v))

    # Oracle self-consistency.
    h8 = random_hermitian(8)
    u8 = unitary_evolution(h8, 1.3)
    checks.append(
        _check(
            "oracle_unitarity",
            np.max(np.abs(u8.conj().T @ u8 - np.eye(8))),
            1e-12,
        )
    )

    dev = 0.0
    for _ in range(4):
        h4 = random_hermitian(4)
        op4 = random_hermitian(4)
        dev = max(dev, picture_equivalence_check(op4, random_pure(4), h4, 1.3))
    checks.append(_check("picture_equivalence", dev, 1e-10))

    # Interference pipelines against the slit-mode model.
    geom = _canonical_geometry()
    xs = np.linspace(-0.025, 0.025, 101)
    fringe = diffraction.single_photon_fringe(geom, xs, mode="far_field")
    oracle_vals = slit_mode_oracle(geom, xs)
    checks.append(
        _check(
            "fringe_heisenberg_vs_slit_modes",
            np.max(np.abs(fringe - oracle_vals)),
            1e-10,
        )
    )
    checks.append(
        _check(
            "fermionic_vs_bosonic_fringe",
            np.max(np.abs(diffraction.fermionic_fringe(geom, xs) - fringe)),
            1e-10,
        )
    )
    photon = fock_state(FockSpace(2), 1)
    raw = np.array([diffraction.intensity_expectation(photon, geom, x) for x in xs])
    checks.append(
        _check(
            "exact_fringe_vs_intensity_pipeline",
            np.max(
                np.abs(raw / raw.max() - diffraction.single_photon_fringe(geom, xs, mode="exact"))
            ),
            1e-12,
        )
    )

    # Qubit dynamics against state evolution.
    params = qubit.QubitModelParams(omega=1.0, cutoff=4)
    h_qubit = qubit.hamiltonian(params)
    times = np.linspace(0.0, 2.0 * math.pi, 100)
    dev = max(
        abs(qubit.transition_probability(params, t) - transition_probability_oracle(params, t))
        for t in times
    )
    checks.append(_check("transition_probability_vs_schrodinger", dev, 1e-10))

    base = qubit.pauli_set(params)
    rotation_dev = 0.0
    sigma_z_dev = 0.0
    for wt in (0.1, 0.7, math.pi / 3.0, 2.5):
        t = wt / params.omega
        evolved = qubit.pauli_evolved(params, t)
        rotation_dev = max(
            rotation_dev,
            np.max(np.abs(heisenberg_conjugate(base.sigma_x, h_qubit, t) - evolved.sigma_x)),
            np.max(np.abs(heisenberg_conjugate(base.sigma_y, h_qubit, t) - evolved.sigma_y)),
        )
        sigma_z_dev = max(
            sigma_z_dev,
            np.max(np.abs(heisenberg_conjugate(base.sigma_z, h_qubit, t) - base.sigma_z)),
        )
    checks.append(_check("pauli_rotation_vs_conjugation", rotation_dev, 1e-10))
    checks.append(_check("sigma_z_conservation", sigma_z_dev, 1e-12))

    quads = qubit.quadratures(params)
    derivative = qubit.operator_derivative(
        lambda q: qubit.quadrature_hamiltonian(q, params.omega), quads, "p_x"
    )
    checks.append(
        _check(
            "hamilton_derivative_vs_commutator",
            np.max(np.abs(derivative - 1j * commutator(h_qubit, quads.x))),
            1e-8,
        )
    )

    small = qubit.QubitModelParams(omega=1.0, cutoff=3)
    t_final = (math.pi / 4.0) / small.omega
    result = qubit.integrate_quadratures(small, t_final, 10_000)
    theta = small.omega * t_final / 2.0
    start = qubit.quadratures(small)
    exact_x = math.cos(theta) * start.x + math.sin(theta) * start.p_x
    checks.append(
        _check(
            "leapfrog_vs_exact_rotation",
            np.max(np.abs(result.operators_at_t[-1].x - exact_x)),
            1e-6,
        )
    )

    def leapfrog_error(n_steps: int) -> float:
        res = qubit.integrate_quadratures(small, t_final, n_steps, record_stride=n_steps)
        return float(np.max(np.abs(res.operators_at_t[-1].x - exact_x)))

    ratio = leapfrog_error(100) / leapfrog_error(200)
    checks.append(_check("leapfrog_convergence_order", abs(ratio - 4.0), 0.3))

    states = _qubit_states(params)
    checks.append(
        _check(
            "amplitude_variation_residual",
            amplitude_variation_check("+", "-", h_qubit, 0.0, 0.7, 1e-4, states),
            1e-8,
        )
    )
    residuals = [
        amplitude_variation_check("+", "-", h_qubit, 0.0, 0.7, e, states)
        for e in (1e-3, 5e-4, 2.5e-4)
    ]
    scaling_dev = max(
        abs(residuals[0] / residuals[1] - 4.0), abs(residuals[1] / residuals[2] - 4.0)
    )
    checks.append(_check("amplitude_variation_quadratic_scaling", scaling_dev, 0.3))

    # Algebra invariants.
    space30 = FockSpace(30)
    n30 = number_op(space30)
    dev = max(
        abs(expectation(coherent_state(space30, alpha), n30).real - abs(alpha) ** 2)
        for alpha in (0.25, 0.5j, 0.6 + 0.8j, 1.0)
    )
    checks.append(_check("coherent_occupation", dev, 1e-10))

    space4 = FockSpace(4)
    a4 = annihilation_op(space4)
    expected = np.diag([1.0, 1.0, 1.0, 1.0 - 4.0]).astype(complex)
    checks.append(
        _check(
            "canonical_commutator_cutoff_corner",
            np.max(np.abs(commutator(a4, creation_op(space4)) - expected)),
            1e-12,
        )
    )

    two_modes = FockSpace(4, 2)
    checks.append(
        _check(
            "distinct_mode_commutation",
            np.max(
                np.abs(
                    commutator(
                        annihilation_op(two_modes, 0), creation_op(two_modes, 1)
                    )
                )
            ),
            0.0,
        )
    )

    ops, _ = fermionic_mode_ops(2)
    car_dev = max(
        np.max(np.abs(anticommutator(ops[0], dagger(ops[0])) - np.eye(4))),
        np.max(np.abs(anticommutator(ops[1], dagger(ops[1])) - np.eye(4))),
        np.max(np.abs(anticommutator(ops[0], dagger(ops[1])))),
        np.max(np.abs(anticommutator(ops[0], ops[1]))),
        np.max(np.abs(anticommutator(ops[0], ops[0]))),
    )
    checks.append(_check("fermionic_car_exactness", car_dev, 0.0))

    return checks


def report_to_json(checks: list[VerificationCheck]) -> str:
    payload = {
        "checks": [
            {
                "check": c.check,
                "max_deviation": c.max_deviation,
                "tolerance": c.tolerance,
                "pass": c.passed,
            }
            for c in checks
        ],
        "all_pass": all(c.passed for c in checks),
    }
    return json_document(payload)
