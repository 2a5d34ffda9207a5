"""Curvature of parametric patches in the upper half-space.

The half-space carries both the Euclidean metric and the hyperbolic metric
ds^2 = (dx^2+dy^2+dz^2)/z^2.  Since the two are conformal, the hyperbolic
principal curvatures are the Euclidean ones lifted by
kappa_i = z * kappa_i^e + N3, and likewise H = z*He + N3 for the means,
where N3 is the third component of the Euclidean unit normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEGENERACY_THRESHOLD = 1e-12


class DegenerateImmersionError(ValueError):
    """Cross product of the first partials is numerically zero."""


class HalfSpaceError(ValueError):
    """Point does not lie in the upper half-space z > 0."""


@dataclass(frozen=True)
class ImmersionJet:
    """Position and first/second partials of a patch at one parameter point."""

    X: np.ndarray
    Xu: np.ndarray
    Xv: np.ndarray
    Xuu: np.ndarray
    Xuv: np.ndarray
    Xvv: np.ndarray


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float

    @property
    def det_first(self) -> float:
        return self.E * self.G - self.F * self.F


@dataclass(frozen=True)
class CurvatureReport:
    He: float
    N3: float
    H: float
    kappaE: tuple[float, float]
    kappaH: tuple[float, float]
    z: float


def unit_normal(jet: ImmersionJet) -> np.ndarray:
    cross = np.cross(jet.Xu, jet.Xv)
    norm = float(np.linalg.norm(cross))
    if norm <= DEGENERACY_THRESHOLD:
        raise DegenerateImmersionError(
            f"|Xu x Xv| = {norm:.3e} <= {DEGENERACY_THRESHOLD}"
        )
    return cross / norm


def fundamental_forms(jet: ImmersionJet) -> FundamentalForms:
    """First and second fundamental forms w.r.t. the Euclidean metric.

    The normal is (Xu x Xv)/|Xu x Xv|.  For the two translation-surface
    parameterizations this convention already produces N3 = 1/W (type I)
    and N3 = g'/W (type II); no per-family sign flip is needed.
    """
    n = unit_normal(jet)
    return FundamentalForms(
        E=float(jet.Xu @ jet.Xu),
        F=float(jet.Xu @ jet.Xv),
        G=float(jet.Xv @ jet.Xv),
        L=float(jet.Xuu @ n),
        M=float(jet.Xuv @ n),
        N=float(jet.Xvv @ n),
    )


def euclidean_mean_curvature(forms: FundamentalForms) -> float:
    det = forms.det_first
    if det <= 0.0:
        raise DegenerateImmersionError(f"EG - F^2 = {det:.3e} <= 0")
    return (forms.G * forms.L - 2.0 * forms.M * forms.F + forms.E * forms.N) / (2.0 * det)


def euclidean_principal_curvatures(forms: FundamentalForms) -> tuple[float, float]:
    """Eigenvalues of the shape operator, via the quadratic on He and K."""
    he = euclidean_mean_curvature(forms)
    k_gauss = (forms.L * forms.N - forms.M * forms.M) / forms.det_first
    disc = he * he - k_gauss
    if disc < 0.0:
        disc = 0.0  # umbilic up to roundoff
    root = math.sqrt(disc)
    return (he - root, he + root)


def hyperbolic_curvature(jet: ImmersionJet) -> CurvatureReport:
    """Curvature report with the conformal lift H = z*He + N3."""
    z = float(jet.X[2])
    if z <= 0.0:
        raise HalfSpaceError(f"point has z = {z} <= 0, outside the half-space")
    forms = fundamental_forms(jet)
    n3 = float(unit_normal(jet)[2])
    he = euclidean_mean_curvature(forms)
    k1e, k2e = euclidean_principal_curvatures(forms)
    return CurvatureReport(
        He=he,
        N3=n3,
        H=z * he + n3,
        kappaE=(k1e, k2e),
        kappaH=(z * k1e + n3, z * k2e + n3),
        z=z,
    )
