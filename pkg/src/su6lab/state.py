"""Six-mode coherent states and their observable geometry.

A normalized amplitude vector alpha (states 1..6, spin-major order) together
with a mean photon number N0 fixes every generator expectation
A_l = hbar * N0 * alpha^dag b_l alpha.  The 35-component vector A always has
length hbar * N0 * sqrt(5/3); two- and three-mode slices of it live on the
named spheres (skyrmion, antiskyrmion, orbital chirality, polarization) and
on the skyrmion torus handled here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import algebra

_TWO_PI = 2.0 * np.pi
R2 = np.sqrt(2.0)

# fixed catalog of named states (amplitudes are normalized at construction)
_NAMED_AMPLITUDES: dict[str, list[complex]] = {
    "basis_1": [1, 0, 0, 0, 0, 0],
    "basis_2": [0, 1, 0, 0, 0, 0],
    "basis_3": [0, 0, 1, 0, 0, 0],
    "basis_4": [0, 0, 0, 1, 0, 0],
    "basis_5": [0, 0, 0, 0, 1, 0],
    "basis_6": [0, 0, 0, 0, 0, 1],
    # radial, spiral and antiradial hedgehogs of the (3, 4) pair
    "neel_out": [0, 0, 1, 1, 0, 0],
    "neel_in": [0, 0, 1, -1, 0, 0],
    "bloch_left": [0, 0, 1, 1j, 0, 0],
    "bloch_right": [0, 0, 1, -1j, 0, 0],
    # equal superpositions of the (3, 5) pair
    "antiskyrmion_h": [0, 0, 1, 0, 1, 0],
    "antiskyrmion_v": [0, 0, 1, 0, -1, 0],
    # fundamental mode plus an orbital dipole
    "dipolar": [0, 0, R2, 1, 1, 0],
    "antidipolar": [0, 0, R2, 1, -1, 0],
    # linearly polarized fundamental modes (bench inputs)
    "h_gaussian": [0, 0, 1, 0, 0, 1],
    "v_gaussian": [0, 0, 1, 0, 0, -1],
}


@dataclass(frozen=True)
class CoherentState:
    """Normalized six-mode amplitude vector with photon-number scale."""

    alpha: np.ndarray
    n0: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        a = np.asarray(self.alpha, dtype=complex).reshape(-1)
        if a.shape != (6,):
            raise ValueError(f"state vector must have 6 components, got {a.shape}")
        norm = float(np.linalg.norm(a))
        if norm < 1e-12:
            raise ValueError("zero amplitude vector is not normalizable")
        if not self.n0 > 0:
            raise ValueError(f"n0 must be positive, got {self.n0!r}")
        a = a / norm
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)

    @property
    def scale(self) -> float:
        """Observable scale hbar * N0 multiplying every expectation."""
        return self.hbar * self.n0


@dataclass(frozen=True)
class SpherePoint:
    """A point of an observable sphere, in units of hbar * N0."""

    kind: str
    coords: np.ndarray            # (3,) real
    theta: float                  # polar angle of coords, radians
    phi: float                    # azimuth, radians, 0 when degenerate
    degenerate_azimuth: bool


@dataclass(frozen=True)
class TorusPoint:
    """Poloidal/toroidal coordinates of a three-mode torus state."""

    theta_p: float                # poloidal angle in [0, 2 pi)
    phi_t: float                  # toroidal phase in (-pi, pi]
    poloidal_radius: float        # hbar * N0 / 2 for torus states


@dataclass(frozen=True)
class Subsphere:
    """One of the fifteen two-mode spheres: a Pauli triple on a state pair."""

    kind: str
    pair: tuple[int, int]         # 1-based state indices, i < j
    note: str
    triple: np.ndarray            # (3, 6, 6) complex


def named_state(name: str, n0: float = 1.0, hbar: float = 1.0) -> CoherentState:
    """Build a state from the catalog; unknown names list the catalog."""
    try:
        amps = _NAMED_AMPLITUDES[name]
    except KeyError:
        known = ", ".join(sorted(_NAMED_AMPLITUDES))
        raise ValueError(f"unknown state name {name!r}; known names: {known}") from None
    return CoherentState(np.asarray(amps, dtype=complex), n0=n0, hbar=hbar)


def state_names() -> tuple[str, ...]:
    return tuple(sorted(_NAMED_AMPLITUDES))


def expectation(state: CoherentState, matrix: np.ndarray) -> float:
    """Expectation hbar * N0 * alpha^dag M alpha of a Hermitian M."""
    m = np.asarray(matrix, dtype=complex)
    if np.max(np.abs(m - m.conj().T)) > 1e-12:
        raise ValueError("expectation requires a Hermitian matrix")
    return state.scale * float(np.real(state.alpha.conj() @ m @ state.alpha))


def all_expectations(state: CoherentState,
                     basis: algebra.GeneratorBasis | None = None) -> np.ndarray:
    """The full 35-component observable vector, norm hbar*N0*sqrt(5/3)."""
    basis = basis or algebra.su6_basis()
    vals = np.einsum(
        "lij,i,j->l", basis.matrices, state.alpha.conj(), state.alpha
    )
    return state.scale * vals.real


def apply_unitary(state: CoherentState, u: np.ndarray) -> CoherentState:
    u = np.asarray(u, dtype=complex)
    if u.shape != (6, 6):
        raise ValueError(f"unitary must be 6x6, got {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(6))) > 1e-10:
        raise ValueError("matrix is not unitary")
    return CoherentState(u @ state.alpha, n0=state.n0, hbar=state.hbar)


def overlap(bra: CoherentState, ket: CoherentState) -> complex:
    """Inner product <bra|ket> of the normalized amplitude vectors."""
    return complex(bra.alpha.conj() @ ket.alpha)


def correspondence_residual(state: CoherentState, axis: np.ndarray, angle: float,
                            basis: algebra.GeneratorBasis | None = None,
                            adjoint: algebra.AdjointRep | None = None) -> float:
    """Max deviation between rotating the observable vector with the adjoint
    matrix exp(G . axis * angle) and transporting the state with the unitary
    exp(-i b . axis * angle / 2) first."""
    basis = basis or algebra.su6_basis()
    if adjoint is None:
        adjoint = algebra.adjoint_matrices(algebra.structure_constants(basis))
    axis = np.asarray(axis, dtype=float)
    gen = np.einsum("l,lij->ij", axis, basis.matrices)
    quantum = all_expectations(
        apply_unitary(state, algebra.exp_generator(gen, angle)), basis
    )
    classical = algebra.exp_adjoint(adjoint, axis, angle) @ all_expectations(
        state, basis
    )
    return float(np.max(np.abs(quantum - classical)))


def _sphere_point(kind: str, coords: np.ndarray) -> SpherePoint:
    coords = np.asarray(coords, dtype=float)
    coords.setflags(write=False)
    r = float(np.linalg.norm(coords))
    if r < 1e-14:
        return SpherePoint(kind, coords, 0.0, 0.0, True)
    theta = float(np.arccos(np.clip(coords[2] / r, -1.0, 1.0)))
    planar = float(np.hypot(coords[0], coords[1]))
    if planar < 1e-14 * max(r, 1.0):
        return SpherePoint(kind, coords, theta, 0.0, True)
    return SpherePoint(kind, coords, theta, float(np.arctan2(coords[1], coords[0])), False)


def _triple_point(state: CoherentState, kind: str, triple: np.ndarray) -> SpherePoint:
    a = state.alpha
    coords = state.scale * np.einsum("kij,i,j->k", triple, a.conj(), a).real
    return _sphere_point(kind, coords)


def skyrmion_sphere(state: CoherentState) -> SpherePoint:
    """Expectations of the (3, 4) pair triple, the skyrmion-family sphere."""
    return _triple_point(state, "skyrmion", algebra.skyrmion_generators())


def antiskyrmion_sphere(state: CoherentState) -> SpherePoint:
    """Expectations of the (3, 5) pair triple."""
    return _triple_point(state, "antiskyrmion", algebra.antiskyrmion_generators())


_OAM_TRIPLE = None
_POL_TRIPLE = None


def _oam_triple() -> np.ndarray:
    global _OAM_TRIPLE
    if _OAM_TRIPLE is None:
        gm = algebra.gell_mann_matrices()
        _OAM_TRIPLE = np.stack([np.kron(np.eye(2), gm[j]) for j in range(3)])
        _OAM_TRIPLE.setflags(write=False)
    return _OAM_TRIPLE


def _pol_triple() -> np.ndarray:
    global _POL_TRIPLE
    if _POL_TRIPLE is None:
        pauli = algebra.pauli_matrices()
        _POL_TRIPLE = np.stack([np.kron(pauli[i], np.eye(3)) for i in range(3)])
        _POL_TRIPLE.setflags(write=False)
    return _POL_TRIPLE


def oam_sphere(state: CoherentState) -> SpherePoint:
    """Orbital-chirality sphere: su(2) on the (L, R) pair for either spin,
    zero on the fundamental mode.  Opposite hedgehogs land on the same
    point here, which is the orbital degeneracy of the texture family."""
    return _triple_point(state, "oam", _oam_triple())


def polarization_sphere(state: CoherentState) -> SpherePoint:
    """Total polarization (Stokes) vector, traced over the orbital modes."""
    return _triple_point(state, "polarization", _pol_triple())


def su2_state(theta: float, phi: float, kind: str = "skyrmion",
              n0: float = 1.0, hbar: float = 1.0) -> CoherentState:
    """Two-mode superposition at polar angle theta, azimuth phi of the
    skyrmion sphere (pair 3, 4) or antiskyrmion sphere (pair 3, 5)."""
    if kind == "skyrmion":
        partner = 3
    elif kind == "antiskyrmion":
        partner = 4
    else:
        raise ValueError(f"kind must be 'skyrmion' or 'antiskyrmion', got {kind!r}")
    a = np.zeros(6, dtype=complex)
    a[2] = np.exp(-0.5j * phi) * np.cos(theta / 2)
    a[partner] = np.exp(0.5j * phi) * np.sin(theta / 2)
    return CoherentState(a, n0=n0, hbar=hbar)


def torus_state(theta_p: float, phi_t: float,
                n0: float = 1.0, hbar: float = 1.0) -> CoherentState:
    """Torus family: fundamental mode at weight 1/2 plus a poloidal mix of
    the two vortex modes of the lower spin, with toroidal phase phi_t.

    theta_p runs over the full poloidal circle: 0 is the skyrmion pair,
    pi the antiskyrmion pair, pi/2 the horizontal dipole and 3 pi/2 the
    vertical dipole.  Angles are wrapped, so any real input is valid.
    """
    a = np.zeros(6, dtype=complex)
    a[2] = 1 / R2
    pair = np.exp(1j * phi_t) / R2
    a[3] = pair * np.cos(theta_p / 2)
    a[4] = pair * np.sin(theta_p / 2)
    return CoherentState(a, n0=n0, hbar=hbar)


def state_to_torus(state: CoherentState, tol: float = 1e-8) -> TorusPoint:
    """Invert the torus family map from measured orbital-chirality data.

    theta_p comes from (L1, L3) = hbar N0 / 2 * (sin, cos) theta_p, phi_t
    from the coherence phase between the fundamental amplitude and the
    poloidal combination of the vortex pair.  States outside the family
    (weight outside states 3..5, or an unbalanced fundamental mode) are
    rejected.
    """
    a = state.alpha
    outside = float(np.sum(np.abs(a[[0, 1, 5]]) ** 2))
    if outside > tol:
        raise ValueError(
            f"state has weight {outside:.3e} outside the span of states 3..5"
        )
    if abs(abs(a[2]) ** 2 - 0.5) > tol:
        raise ValueError(
            "torus states need a balanced fundamental mode: |alpha_3|^2 = 1/2, "
            f"got {abs(a[2]) ** 2:.6f}"
        )
    l1 = 2.0 * float(np.real(np.conj(a[3]) * a[4]))
    l3 = float(np.abs(a[3]) ** 2 - np.abs(a[4]) ** 2)
    theta_p = float(np.arctan2(l1, l3)) % _TWO_PI
    u = np.array([np.cos(theta_p / 2), np.sin(theta_p / 2)])
    c = u[0] * a[3] + u[1] * a[4]
    phi_t = float(np.angle(c * np.conj(a[2])))
    return TorusPoint(theta_p=theta_p, phi_t=phi_t,
                      poloidal_radius=state.scale * float(np.hypot(l1, l3)))


def pair_triple(i: int, j: int) -> np.ndarray:
    """Pauli triple (X, Y, Z) on the two states i < j (1-based)."""
    if not (1 <= i < j <= 6):
        raise ValueError(f"need 1 <= i < j <= 6, got ({i}, {j})")
    a, b = i - 1, j - 1
    x = np.zeros((6, 6), dtype=complex)
    y = np.zeros((6, 6), dtype=complex)
    z = np.zeros((6, 6), dtype=complex)
    x[a, b] = x[b, a] = 1.0
    y[a, b] = -1j
    y[b, a] = 1j
    z[a, a] = 1.0
    z[b, b] = -1.0
    return np.stack([x, y, z])


_SUBSPHERE_TABLE: tuple[tuple[str, tuple[int, int], str], ...] = (
    ("polarization", (1, 4), "polarization within the L vortex pair"),
    ("polarization", (2, 5), "polarization within the R vortex pair"),
    ("polarization", (3, 6), "polarization within the fundamental pair"),
    ("oam", (1, 2), "orbital chirality at spin up"),
    ("oam", (1, 3), "L vortex against fundamental at spin up"),
    ("oam", (2, 3), "R vortex against fundamental at spin up"),
    ("oam", (4, 5), "orbital chirality at spin down"),
    ("oam", (4, 6), "L vortex against fundamental at spin down"),
    ("oam", (5, 6), "R vortex against fundamental at spin down"),
    ("coupling", (2, 4), "singlet-triplet spin-orbit coupling pair"),
    ("coupling", (1, 5), "triplet-triplet spin-orbit coupling pair"),
    ("skyrmion", (3, 4), "skyrmion pair"),
    ("skyrmion", (2, 6), "conjugate skyrmion pair"),
    ("antiskyrmion", (3, 5), "antiskyrmion pair"),
    ("antiskyrmion", (1, 6), "conjugate antiskyrmion pair"),
)


def enumerate_subspheres() -> tuple[Subsphere, ...]:
    """All fifteen two-mode spheres; together they cover every unordered
    pair of the six states exactly once (3 + 6 + 2 + 2 + 2)."""
    return tuple(
        Subsphere(kind=kind, pair=pair, note=note, triple=pair_triple(*pair))
        for kind, pair, note in _SUBSPHERE_TABLE
    )


def subsphere_point(state: CoherentState, pair: tuple[int, int]) -> SpherePoint:
    """Observable point on the two-mode sphere of the given state pair."""
    i, j = pair
    return _triple_point(state, f"pair({i},{j})", pair_triple(i, j))
