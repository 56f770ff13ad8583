"""Generator bases for su(2), su(3) and su(6) with their Lie-algebra data.

The six-mode basis is ordered spin-major: state 1 = (up, L), 2 = (up, R),
3 = (up, O), 4 = (down, L), 5 = (down, R), 6 = (down, O), where up/down are
the two circular polarizations and L/R/O are the orbital modes with
azimuthal index +1, -1 and 0.

The 35 su(6) generators come in three families,

* ``s1..s3``    : sigma_i (x) 1, rescaled by 1/sqrt(3),
* ``o1..o8``    : 1 (x) lambda_j, rescaled by 1/sqrt(2),
* ``s{i}o{j}``  : sigma_i (x) lambda_j, rescaled by 1/sqrt(2),

so that every generator b_l satisfies tr(b_l b_m) = 2 delta_lm.  Structure
constants are defined through [b_l, b_m] = 2i sum_n g_lmn b_n and the
adjoint matrices through (G_l)_mn = -g_lmn, which closes as
[G_l, G_m] = sum_n g_lmn G_n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

BASIS_VERSION = "su6-spin3-oam8-coupled24-v1"

_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

_GELL_MANN = np.array(
    [
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
        np.diag([1, 1, -2]) / np.sqrt(3.0),
    ],
    dtype=complex,
)


def pauli_matrices() -> np.ndarray:
    """Return the three Pauli matrices as a (3, 2, 2) complex array."""
    return _PAULI.copy()


def gell_mann_matrices() -> np.ndarray:
    """Return the eight Gell-Mann matrices as an (8, 3, 3) complex array.

    The 3-dimensional space is ordered (L, R, O): lambda_3 separates the
    two vortex chiralities, lambda_4/lambda_5 couple L with O and
    lambda_6/lambda_7 couple R with O.
    """
    return _GELL_MANN.copy()


@dataclass(frozen=True)
class GeneratorBasis:
    """Ordered, trace-normalized generator set for su(6)."""

    matrices: np.ndarray          # (35, 6, 6) complex, tr(b_l b_m) = 2 delta
    labels: tuple[str, ...]       # family tags, e.g. "s2", "o5", "s1o4"
    version: str = BASIS_VERSION

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown generator label {label!r}") from None


@dataclass(frozen=True)
class AdjointRep:
    """Adjoint matrices G_l with the measured closure constant c in
    [G_l, G_m] = c * sum_n g_lmn G_n."""

    matrices: np.ndarray          # (35, 35, 35) real antisymmetric
    closure_constant: float
    version: str = BASIS_VERSION


@lru_cache(maxsize=1)
def _su6_basis_cached() -> GeneratorBasis:
    i2, i3 = np.eye(2, dtype=complex), np.eye(3, dtype=complex)
    mats, labels = [], []
    for i in range(3):
        mats.append(np.kron(_PAULI[i], i3) / np.sqrt(3.0))
        labels.append(f"s{i + 1}")
    for j in range(8):
        mats.append(np.kron(i2, _GELL_MANN[j]) / np.sqrt(2.0))
        labels.append(f"o{j + 1}")
    for i in range(3):
        for j in range(8):
            mats.append(np.kron(_PAULI[i], _GELL_MANN[j]) / np.sqrt(2.0))
            labels.append(f"s{i + 1}o{j + 1}")
    arr = np.stack(mats)
    arr.setflags(write=False)
    return GeneratorBasis(matrices=arr, labels=tuple(labels))


def su6_basis() -> GeneratorBasis:
    """Return the canonical 35-generator su(6) basis (cached, read-only)."""
    return _su6_basis_cached()


def _check_hermitian(m: np.ndarray, what: str, tol: float = 1e-12) -> None:
    resid = float(np.max(np.abs(m - m.conj().T)))
    if resid > tol:
        raise ValueError(f"{what} is not Hermitian (residual {resid:.3e})")


def structure_constants(basis: GeneratorBasis | None = None,
                        tol: float = 1e-10) -> np.ndarray:
    """Compute g_lmn = -i tr([b_l, b_m] b_n) / 4 for a trace-normalized basis.

    The basis is validated first (hermiticity and tr(b_l b_m) = 2 delta_lm)
    and the result is checked against the closure relation
    [b_l, b_m] = 2i sum_n g_lmn b_n before it is returned.
    """
    basis = basis or su6_basis()
    mats = np.asarray(basis.matrices)
    n = mats.shape[0]
    herm = np.max(np.abs(mats - mats.conj().transpose(0, 2, 1)), axis=(1, 2))
    if np.any(herm > 1e-12):
        bad = int(np.argmax(herm))
        raise ValueError(
            f"generator {basis.labels[bad]!r} is not Hermitian "
            f"(residual {herm[bad]:.3e})"
        )
    gram = np.einsum("aij,bji->ab", mats, mats)
    dev = np.abs(gram - 2.0 * np.eye(n))
    if np.max(dev) > 1e-10:
        a, b = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise ValueError(
            "basis is not trace-orthonormal: tr(b_l b_m) != 2 delta for pair "
            f"({basis.labels[a]!r}, {basis.labels[b]!r}), "
            f"residual {dev[a, b]:.3e}"
        )
    comm = np.einsum("lik,mkj->lmij", mats, mats)
    comm = comm - comm.transpose(1, 0, 2, 3)
    g = -0.25j * np.einsum("lmij,nji->lmn", comm, mats)
    if np.max(np.abs(g.imag)) > 1e-12:
        raise RuntimeError("structure constants acquired an imaginary part")
    g = np.ascontiguousarray(g.real)
    recon = 2j * np.einsum("lmn,nij->lmij", g, mats)
    resid = float(np.max(np.abs(comm - recon)))
    if resid > tol:
        raise RuntimeError(
            f"commutator closure failed (residual {resid:.3e} > {tol:.1e}); "
            "the supplied basis does not span a closed algebra"
        )
    g.setflags(write=False)
    return g


def adjoint_matrices(g: np.ndarray, tol: float = 1e-10) -> AdjointRep:
    """Build the adjoint matrices (G_l)_mn = -g_lmn and measure the closure
    constant c in [G_l, G_m] = c sum_n g_lmn G_n (expected: c = 1)."""
    g = np.asarray(g, dtype=float)
    G = -g.copy()
    lhs = np.einsum("lab,mbc->lmac", G, G)
    lhs = lhs - lhs.transpose(1, 0, 2, 3)
    rhs = np.einsum("lmn,nac->lmac", g, G)
    denom = float(np.sum(rhs * rhs))
    if denom == 0.0:
        raise ValueError("structure constants are identically zero")
    c = float(np.sum(lhs * rhs) / denom)
    resid = float(np.max(np.abs(lhs - c * rhs)))
    if resid > tol:
        raise RuntimeError(
            f"adjoint closure failed (residual {resid:.3e} > {tol:.1e} "
            f"at fitted constant c = {c!r})"
        )
    G.setflags(write=False)
    return AdjointRep(matrices=G, closure_constant=c)


def _exact_pair_triple(i: int, j: int) -> np.ndarray:
    # entries are 0, +-1, +-i; assembled directly so the restriction to
    # the (i, j) support equals the Pauli matrices bit for bit
    t = np.zeros((3, 6, 6), dtype=complex)
    t[0, i, j] = t[0, j, i] = 1.0
    t[1, i, j] = -1j
    t[1, j, i] = 1j
    t[2, i, i] = 1.0
    t[2, j, j] = -1.0
    t.setflags(write=False)
    return t


def skyrmion_generators() -> np.ndarray:
    """Generator triple acting as Pauli matrices on the pair of modes
    (up, O) and (down, L), i.e. states 3 and 4.

    Exponentials of this triple steer superpositions of a fundamental
    left-circular mode with a right-circular vortex of positive chirality,
    the family whose transverse textures are skyrmions.
    """
    return _exact_pair_triple(2, 3)


def antiskyrmion_generators() -> np.ndarray:
    """Generator triple acting as Pauli matrices on the pair of modes
    (up, O) and (down, R), i.e. states 3 and 5; the texture family with
    reversed in-plane winding (antiskyrmions)."""
    return _exact_pair_triple(2, 4)


def exp_generator(generator: np.ndarray, angle: float) -> np.ndarray:
    """Unitary exp(-i * generator * angle / 2) via eigendecomposition.

    The half angle makes a 2*pi rotation of any two-mode pair flip the sign
    on its support (double cover); 4*pi returns the identity.
    """
    generator = np.asarray(generator, dtype=complex)
    _check_hermitian(generator, "generator")
    w, v = np.linalg.eigh(generator)
    return (v * np.exp(-0.5j * w * angle)) @ v.conj().T


def euler_rotation(generator: np.ndarray, angle: float) -> np.ndarray:
    """Closed-form exp(-i * generator * angle / 2) for involutive generators.

    Requires generator^2 to be a projector P with P @ generator = generator;
    then the exponential is (1 - P) + cos(angle/2) P - i sin(angle/2) G.
    Valid for any of the two-mode pair triples.
    """
    g = np.asarray(generator, dtype=complex)
    _check_hermitian(g, "generator")
    p = g @ g
    if np.max(np.abs(p @ p - p)) > 1e-12 or np.max(np.abs(p @ g - g)) > 1e-12:
        raise ValueError(
            "generator square is not a projector on its support; "
            "the closed-form rotation only applies to involutive generators"
        )
    n = g.shape[0]
    return (
        np.eye(n, dtype=complex)
        - p
        + np.cos(angle / 2) * p
        - 1j * np.sin(angle / 2) * g
    )


def exp_adjoint(adjoint: AdjointRep | np.ndarray, axis: np.ndarray,
                angle: float) -> np.ndarray:
    """Rotation exp(sum_l axis_l G_l * angle) of the 35-dimensional
    observable vector; real special-orthogonal for real axis."""
    mats = getattr(adjoint, "matrices", adjoint)
    mats = np.asarray(mats, dtype=float)
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (mats.shape[0],):
        raise ValueError(
            f"axis must have {mats.shape[0]} components, got {axis.shape}"
        )
    if np.linalg.norm(axis) < 1e-12:
        raise ValueError("rotation axis is the zero vector")
    gen = np.einsum("l,lmn->mn", axis, mats)
    return scipy.linalg.expm(gen * angle)
