"""Transverse fields, Stokes textures, sphere maps and topology.

A six-amplitude state is rendered onto a square grid as a pair of
circular-polarization field components built from the three lowest
Laguerre-Gauss modes (orbital charges +1, -1, 0, common waist, waist
plane, no propagation).  From the pair come the four Stokes fields and
the unit spin texture n = (S1, S2, S3)/S0, defined where S0 exceeds
1e-12 of its peak.

The topological charge is computed two independent ways:

* ``skyrmion_number`` integrates the density n . (dn/dx x dn/dy) / 4pi
  with central finite differences, trapezoidal over grid plaquettes.
* ``skyrmion_number_solid_angle`` sums spherical-triangle solid angles
  of the unit vectors at plaquette corners (the lattice-exact degree of
  the discrete map).

Both routes close the texture outside the integration disk by
saturating it at the average rim spin: spins outside the disk (or where
the intensity is below the cutoff) are replaced by the normalized mean
over the rim ring, and one constant ring of that vector is added past
the grid edge.  The closed map has an integer degree, so both routes
converge to the same integer as the grid is refined; the closure
contribution itself is evaluated once with the solid-angle rule and
shared, so the two results differ only by the interior quadrature.
The derivatives themselves are taken on the texture continued past the
intensity cutoff by nearest defined pixel, never on the saturated map,
so no stencil straddles the artificial closure step.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .state import (
    CoherentState,
    antiskyrmion_sphere,
    skyrmion_sphere,
    state_to_torus,
)

__all__ = [
    "SpinTextureMap",
    "StokesField",
    "TransverseGrid",
    "classify_texture",
    "lg_mode",
    "radial_to_polar",
    "skyrmion_number",
    "skyrmion_number_solid_angle",
    "soup_bubble",
    "stokes_fields",
    "synthesize",
]

_S0_CUTOFF = 1e-12


@dataclass(frozen=True)
class TransverseGrid:
    """Square pixel-center grid, x and y in [-extent, extent]."""

    size: int = 256
    extent: float = 3.0

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 16:
            raise ValueError(f"size must be an integer >= 16, got {self.size}")
        if not self.extent > 0:
            raise ValueError(f"extent must be positive, got {self.extent}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / self.size

    @property
    def area(self) -> float:
        return self.spacing**2

    @cached_property
    def axis(self) -> np.ndarray:
        h = self.spacing
        return -self.extent + h * (np.arange(self.size) + 0.5)

    @cached_property
    def xx(self) -> np.ndarray:
        return np.meshgrid(self.axis, self.axis, indexing="xy")[0]

    @cached_property
    def yy(self) -> np.ndarray:
        return np.meshgrid(self.axis, self.axis, indexing="xy")[1]

    @cached_property
    def rr(self) -> np.ndarray:
        return np.hypot(self.xx, self.yy)

    @cached_property
    def phi(self) -> np.ndarray:
        return np.arctan2(self.yy, self.xx)


@dataclass(frozen=True, eq=False)
class StokesField:
    """Gridded Stokes fields and the unit spin texture."""

    grid: TransverseGrid
    s0: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    n: np.ndarray
    mask: np.ndarray


@dataclass(frozen=True, eq=False)
class SpinTextureMap:
    """Spin texture resampled onto polar/azimuth bins of the sphere."""

    vectors: np.ndarray
    counts: np.ndarray
    disk_radius: float
    profile: str
    bins: tuple[int, int]


def lg_mode(grid: TransverseGrid, m: int, waist: float = 1.0) -> np.ndarray:
    """Laguerre-Gauss mode of orbital charge m in {-1, 0, +1}.

    m = 0 is the Gaussian exp(-r^2/w^2); m = +-1 carry the ring envelope
    (sqrt(2) r / w) exp(-r^2/w^2) and the azimuthal phase exp(i m phi).
    L2-normalized on the grid.
    """
    if m not in (-1, 0, 1):
        raise ValueError(f"orbital charge m must be -1, 0 or +1, got {m}")
    if not waist > 0:
        raise ValueError(f"waist must be positive, got {waist}")
    envelope = np.exp(-((grid.rr / waist) ** 2))
    if m == 0:
        u = envelope.astype(complex)
    else:
        u = (np.sqrt(2.0) * grid.rr / waist) * envelope * np.exp(1j * m * grid.phi)
    return u / np.sqrt(np.sum(np.abs(u) ** 2) * grid.area)


def synthesize(
    state: CoherentState, grid: TransverseGrid, waist: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Field pair (E_left, E_right) of the circular polarizations."""
    modes = (lg_mode(grid, 1, waist), lg_mode(grid, -1, waist), lg_mode(grid, 0, waist))
    a = state.alpha
    e_left = a[0] * modes[0] + a[1] * modes[1] + a[2] * modes[2]
    e_right = a[3] * modes[0] + a[4] * modes[1] + a[5] * modes[2]
    return e_left, e_right


def stokes_fields(
    e_left: np.ndarray, e_right: np.ndarray, grid: TransverseGrid
) -> StokesField:
    """Stokes fields of a circular-basis field pair.

    S3 > 0 means the left-circular (spin up) component dominates.  The
    spin texture n is set to the zero vector where S0 is below 1e-12 of
    its peak.
    """
    shape = (grid.size, grid.size)
    if e_left.shape != shape or e_right.shape != shape:
        raise ValueError(
            f"field shape {e_left.shape} does not match the grid {shape}"
        )
    il = np.abs(e_left) ** 2
    ir = np.abs(e_right) ** 2
    cross = np.conj(e_left) * e_right
    s0 = il + ir
    s1 = 2.0 * np.real(cross)
    s2 = 2.0 * np.imag(cross)
    s3 = il - ir
    mask = s0 > _S0_CUTOFF * s0.max()
    n = np.zeros(shape + (3,))
    n[mask] = np.stack((s1[mask], s2[mask], s3[mask]), axis=-1) / s0[mask, None]
    return StokesField(grid=grid, s0=s0, s1=s1, s2=s2, s3=s3, n=n, mask=mask)


# ---------------------------------------------------------------- topology


def _triangle_solid_angles(n1, n2, n3):
    num = np.einsum("...i,...i->...", n1, np.cross(n2, n3))
    den = (
        1.0
        + np.einsum("...i,...i->...", n1, n2)
        + np.einsum("...i,...i->...", n2, n3)
        + np.einsum("...i,...i->...", n3, n1)
    )
    return 2.0 * np.arctan2(num, den)


def _plaquette_solid_angles(spins):
    a = spins[:-1, :-1]
    b = spins[:-1, 1:]
    c = spins[1:, 1:]
    d = spins[1:, :-1]
    return _triangle_solid_angles(a, b, c) + _triangle_solid_angles(a, c, d)


def _central_diff(values, spacing, axis):
    # fourth-order symmetric stencil; np.gradient covers the two-pixel
    # border where that stencil does not fit
    grad = np.gradient(values, spacing, axis=axis)
    v = np.moveaxis(values, axis, 0)
    g = np.moveaxis(grad, axis, 0)
    g[2:-2] = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (
        12.0 * spacing
    )
    return grad


def _continue_past_cutoff(sf: StokesField):
    # derivatives need a smooth field; dark pixels inherit the spin of
    # the nearest defined pixel instead of an arbitrary constant
    if sf.mask.all():
        return sf.n
    from scipy import ndimage

    rows, cols = ndimage.distance_transform_edt(
        ~sf.mask, return_distances=False, return_indices=True
    )
    return sf.n[rows, cols]


def _closed_texture(sf: StokesField, disk_radius: float):
    grid = sf.grid
    disk = grid.rr <= disk_radius
    if not disk.any():
        raise ValueError("integration disk contains no grid pixels")
    undefined = disk & ~sf.mask
    if undefined.sum() > 0.25 * disk.sum():
        pct = round(100.0 * undefined.sum() / disk.sum())
        raise ValueError(
            f"spin texture undefined on {pct}% of the disk pixels; "
            "shrink the disk or raise the intensity"
        )
    mask = disk & sf.mask

    inner = np.zeros_like(mask)
    inner[1:-1, 1:-1] = (
        mask[1:-1, 1:-1]
        & mask[:-2, 1:-1]
        & mask[2:, 1:-1]
        & mask[1:-1, :-2]
        & mask[1:-1, 2:]
    )
    rim = mask & ~inner
    mean = sf.n[rim].mean(axis=0)
    scale = np.linalg.norm(mean)
    if scale < 1e-6 or np.min(sf.n[rim] @ (mean / max(scale, 1e-300))) < 0.0:
        raise ValueError(
            "rim spins do not saturate toward a common direction; the "
            "disk boundary cuts the texture and its charge is undefined"
        )
    n_sat = mean / scale
    closed = np.where(mask[..., None], sf.n, n_sat)

    padded = np.empty((grid.size + 2, grid.size + 2, 3))
    padded[...] = n_sat
    padded[1:-1, 1:-1] = closed
    omega = _plaquette_solid_angles(padded)
    bl_total = omega.sum() / (4.0 * np.pi)

    interior = (
        mask[:-1, :-1] & mask[:-1, 1:] & mask[1:, 1:] & mask[1:, :-1]
    )
    bl_interior = omega[1:-1, 1:-1][interior].sum() / (4.0 * np.pi)

    # gradients come from the texture itself wherever the intensity
    # defines it, so no stencil straddles the saturation step
    smooth = _continue_past_cutoff(sf)
    h = grid.spacing
    gx = _central_diff(smooth, h, axis=1)
    gy = _central_diff(smooth, h, axis=0)
    rho = np.einsum("...i,...i->...", smooth, np.cross(gx, gy)) / (4.0 * np.pi)
    plaq = 0.25 * (rho[:-1, :-1] + rho[:-1, 1:] + rho[1:, 1:] + rho[1:, :-1])
    fd_interior = (plaq[interior] * h * h).sum()

    fd_total = fd_interior + (bl_total - bl_interior)
    return fd_total, bl_total


def skyrmion_number(sf: StokesField, disk_radius: float | None = None) -> float:
    """Topological charge over the disk by the finite-difference route."""
    if disk_radius is None:
        disk_radius = sf.grid.extent
    return float(_closed_texture(sf, disk_radius)[0])


def skyrmion_number_solid_angle(
    sf: StokesField, disk_radius: float | None = None
) -> float:
    """Topological charge by the triangle solid-angle route."""
    if disk_radius is None:
        disk_radius = sf.grid.extent
    return float(_closed_texture(sf, disk_radius)[1])


# --------------------------------------------------------------- sphere map


def radial_to_polar(r, disk_radius: float, profile: str = "linear"):
    """Map disk radius to sphere polar angle; 'linear' or 'area'."""
    x = np.clip(np.asarray(r, dtype=float) / disk_radius, 0.0, 1.0)
    if profile == "linear":
        theta = np.pi * x
    elif profile == "area":
        theta = 2.0 * np.arcsin(x)
    else:
        raise ValueError(f"unknown radial profile {profile!r}")
    if np.ndim(r) == 0:
        return float(theta)
    return theta


def soup_bubble(
    sf: StokesField,
    disk_radius: float | None = None,
    bins: tuple[int, int] = (32, 64),
    profile: str = "linear",
) -> SpinTextureMap:
    """Resample the disk's spin texture onto sphere bins.

    Radius maps monotonically to the polar angle (axis pixels to the
    north pole, the disk boundary to the south pole), azimuth is kept.
    Each bin holds the normalized mean spin of the pixels that landed in
    it; bins no pixel reached have a zero vector and count 0.
    """
    grid = sf.grid
    if disk_radius is None:
        disk_radius = grid.extent
    if disk_radius > grid.extent + 1e-12:
        raise ValueError(
            f"disk radius {disk_radius} exceeds the grid extent {grid.extent}"
        )
    n_theta, n_phi = bins
    if n_theta < 1 or n_phi < 1:
        raise ValueError(f"bins must be positive, got {bins}")
    sel = (grid.rr <= disk_radius) & sf.mask
    theta = radial_to_polar(grid.rr[sel], disk_radius, profile)
    phi = grid.phi[sel]
    i_theta = np.minimum((theta / np.pi * n_theta).astype(int), n_theta - 1)
    i_phi = np.minimum(
        ((phi + np.pi) / (2.0 * np.pi) * n_phi).astype(int), n_phi - 1
    )
    flat = i_theta * n_phi + i_phi
    counts = np.bincount(flat, minlength=n_theta * n_phi)
    sums = np.zeros((n_theta * n_phi, 3))
    for k in range(3):
        sums[:, k] = np.bincount(
            flat, weights=sf.n[sel][:, k], minlength=n_theta * n_phi
        )
    vectors = np.zeros_like(sums)
    filled = counts > 0
    norms = np.linalg.norm(sums[filled], axis=-1)
    vectors[filled] = sums[filled] / norms[:, None]
    return SpinTextureMap(
        vectors=vectors.reshape(n_theta, n_phi, 3),
        counts=counts.reshape(n_theta, n_phi),
        disk_radius=float(disk_radius),
        profile=profile,
        bins=(n_theta, n_phi),
    )


# ------------------------------------------------------------ classification

_SKYRMION_CARDINALS = (
    (np.array([1.0, 0.0, 0.0]), "neel_out"),
    (np.array([-1.0, 0.0, 0.0]), "neel_in"),
    (np.array([0.0, 1.0, 0.0]), "bloch_left"),
    (np.array([0.0, -1.0, 0.0]), "bloch_right"),
)
_ANTISKYRMION_CARDINALS = (
    (np.array([1.0, 0.0, 0.0]), "antiskyrmion_h"),
    (np.array([-1.0, 0.0, 0.0]), "antiskyrmion_v"),
)


def _wrap_angle(x: float) -> float:
    return (x + np.pi) % (2.0 * np.pi) - np.pi


def _pair_label(coords, cardinals, tol: float) -> str:
    r = np.linalg.norm(coords)
    if r < 1e-12:
        return "intermediate"
    u = np.asarray(coords) / r
    for target, label in cardinals:
        if np.arccos(np.clip(u @ target, -1.0, 1.0)) <= tol:
            return label
    polar = np.arccos(np.clip(u[2], -1.0, 1.0))
    if polar <= tol or polar >= np.pi - tol:
        return "pole"
    return "intermediate"


def classify_texture(state: CoherentState, tol_deg: float = 1.0) -> str:
    """Name the texture of a state in the span of basis states 3, 4, 5.

    Labels: the four named skyrmion textures, the two named
    antiskyrmion orientations, dipolar, antidipolar, "pole" for states
    at a pair-sphere pole, "intermediate" for anything else inside the
    span, and "other" outside it.  Named labels require the sphere or
    torus coordinates to lie within tol_deg of the exact point.
    """
    tol = np.deg2rad(tol_deg)
    weights = np.abs(state.alpha) ** 2
    if weights[0] + weights[1] + weights[5] > 1e-9:
        return "other"
    if weights[4] <= 1e-9:
        return _pair_label(skyrmion_sphere(state).coords, _SKYRMION_CARDINALS, tol)
    if weights[3] <= 1e-9:
        return _pair_label(
            antiskyrmion_sphere(state).coords, _ANTISKYRMION_CARDINALS, tol
        )
    try:
        tp = state_to_torus(state, tol=1e-6)
    except ValueError:
        return "intermediate"
    if (
        abs(_wrap_angle(tp.theta_p - np.pi / 2)) <= tol
        and abs(_wrap_angle(tp.phi_t)) <= tol
    ):
        return "dipolar"
    if (
        abs(_wrap_angle(tp.theta_p - 3 * np.pi / 2)) <= tol
        and abs(_wrap_angle(tp.phi_t - np.pi)) <= tol
    ):
        return "antidipolar"
    return "intermediate"
