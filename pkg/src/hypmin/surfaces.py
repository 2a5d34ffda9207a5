"""Translation-surface families and reference surfaces.

Type I surfaces are graphs z = f(x) + g(y); type II surfaces are graphs
y = f(x) + g(z).  Both come with closed-form minimality residuals, and the
module also provides the classical reference surfaces (Scherk's Euclidean
minimal surface, horospheres, hemispheres, vertical planes) that serve as
oracles for the curvature kernel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from .jets import Jet3
from .kernel import HalfSpaceError, ImmersionJet


class SingularLocusError(ValueError):
    """A residual formula was evaluated where it divides by zero (f'=0 or g'=0)."""


class DomainError(ValueError):
    """Evaluation point outside the declared parameter domain."""


class UsageError(TypeError):
    """Operation applied to the wrong surface kind."""


class Kind(enum.Enum):
    TYPE_I = "type1"
    TYPE_II = "type2"


@dataclass(frozen=True)
class FunctionCurve:
    """A smooth single-variable function exposed through its order-3 jet."""

    eval: Callable[[float], Jet3]
    domain: tuple[float, float]

    def __call__(self, t: float) -> Jet3:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise DomainError(f"t = {t} outside function domain [{lo}, {hi}]")
        return self.eval(t)


def constant(c: float, domain=(-math.inf, math.inf)) -> FunctionCurve:
    return FunctionCurve(lambda t: Jet3.constant(c), domain)


def linear(m: float, n: float, domain=(-math.inf, math.inf)) -> FunctionCurve:
    return FunctionCurve(lambda t: Jet3(m * t + n, m, 0.0, 0.0), domain)


def polynomial(coeffs, domain=(-math.inf, math.inf)) -> FunctionCurve:
    """coeffs in descending powers, numpy.polyval convention."""
    c = np.asarray(coeffs, dtype=float)
    d1 = np.polyder(c, 1)
    d2 = np.polyder(c, 2)
    d3 = np.polyder(c, 3)

    def ev(t: float) -> Jet3:
        return Jet3(
            float(np.polyval(c, t)),
            float(np.polyval(d1, t)),
            float(np.polyval(d2, t)),
            float(np.polyval(d3, t)),
        )

    return FunctionCurve(ev, domain)


def quadratic(a2: float, a1: float, a0: float, domain=(-math.inf, math.inf)) -> FunctionCurve:
    return polynomial([a2, a1, a0], domain)


def log_cos(a: float, scale: float, domain=None) -> FunctionCurve:
    """t -> scale * log|cos(a t)|; the building block of Scherk's surface."""
    if a == 0.0:
        raise ValueError("log_cos requires a != 0")
    if domain is None:
        half = math.pi / (2.0 * abs(a))
        domain = (-half, half)

    def ev(t: float) -> Jet3:
        inner = Jet3(a * t, a, 0.0, 0.0)
        return scale * jets.abs_log_cos(inner)

    return FunctionCurve(ev, domain)


def from_bspline(spline, domain: tuple[float, float]) -> FunctionCurve:
    """Wrap a scipy BSpline (cubic) as a FunctionCurve with three derivatives."""
    derivs = [spline.derivative(k) for k in (1, 2, 3)]

    def ev(t: float) -> Jet3:
        return Jet3(
            float(spline(t)),
            float(derivs[0](t)),
            float(derivs[1](t)),
            float(derivs[2](t)),
        )

    return FunctionCurve(ev, domain)


@dataclass(frozen=True)
class TranslationSurface:
    kind: Kind
    f: FunctionCurve
    g: FunctionCurve
    domain: tuple[tuple[float, float], tuple[float, float]]  # (u-range, v-range)

    def jet(self, u: float, v: float) -> ImmersionJet:
        return patch_jet(self, u, v)


def _check_domain(s: TranslationSurface, u: float, v: float) -> None:
    (u0, u1), (v0, v1) = s.domain
    if not (u0 <= u <= u1 and v0 <= v <= v1):
        raise DomainError(f"({u}, {v}) outside surface domain {s.domain}")


def patch_jet(
    s: TranslationSurface, u: float, v: float, check_halfspace: bool = True
) -> ImmersionJet:
    """Assemble the immersion jet of the patch at (u, v) from the jets of f and g.

    Positivity of the type-I height f+g is validated here, eagerly, because
    spline-backed curves may dip below zero away from any construction-time
    check grid.
    """
    _check_domain(s, u, v)
    fj = s.f(u)
    gj = s.g(v)
    if s.kind is Kind.TYPE_I:
        z = fj.v0 + gj.v0
        if check_halfspace and z <= 0.0:
            raise HalfSpaceError(f"type I graph height f+g = {z} <= 0 at ({u}, {v})")
        return ImmersionJet(
            X=np.array([u, v, z]),
            Xu=np.array([1.0, 0.0, fj.v1]),
            Xv=np.array([0.0, 1.0, gj.v1]),
            Xuu=np.array([0.0, 0.0, fj.v2]),
            Xuv=np.zeros(3),
            Xvv=np.array([0.0, 0.0, gj.v2]),
        )
    if check_halfspace and v <= 0.0:
        raise HalfSpaceError(f"type II parameter z = {v} <= 0")
    return ImmersionJet(
        X=np.array([u, fj.v0 + gj.v0, v]),
        Xu=np.array([1.0, fj.v1, 0.0]),
        Xv=np.array([0.0, gj.v1, 1.0]),
        Xuu=np.array([0.0, fj.v2, 0.0]),
        Xuv=np.zeros(3),
        Xvv=np.array([0.0, gj.v2, 0.0]),
    )


# -- closed-form minimality residuals ---------------------------------


def type1_residual(s: TranslationSurface, x: float, y: float) -> float:
    """LHS - RHS of the type-I minimality equation

        (f+g)(f''/(1+f'^2) + g''/(1+g'^2)) = -2 (1+f'^2+g'^2) / ((1+f'^2)(1+g'^2)).
    """
    if s.kind is not Kind.TYPE_I:
        raise UsageError("type1_residual requires a type I surface")
    _check_domain(s, x, y)
    fj, gj = s.f(x), s.g(y)
    z = fj.v0 + gj.v0
    if z <= 0.0:
        raise HalfSpaceError(f"f+g = {z} <= 0 at ({x}, {y})")
    P = 1.0 + fj.v1 ** 2
    Q = 1.0 + gj.v1 ** 2
    lhs = z * (fj.v2 / P + gj.v2 / Q)
    rhs = -2.0 * (1.0 + fj.v1 ** 2 + gj.v1 ** 2) / (P * Q)
    return lhs - rhs


def type2_residual(s: TranslationSurface, x: float, z: float) -> float:
    """LHS - RHS of the type-II minimality equation

        z (f''/(1+f'^2) + g''/(1+g'^2)) = 2 g' (1+f'^2+g'^2) / ((1+f'^2)(1+g'^2)).
    """
    if s.kind is not Kind.TYPE_II:
        raise UsageError("type2_residual requires a type II surface")
    _check_domain(s, x, z)
    if z <= 0.0:
        raise HalfSpaceError(f"z = {z} <= 0")
    fj, gj = s.f(x), s.g(z)
    P = 1.0 + fj.v1 ** 2
    Q = 1.0 + gj.v1 ** 2
    lhs = z * (fj.v2 / P + gj.v2 / Q)
    rhs = 2.0 * gj.v1 * (1.0 + fj.v1 ** 2 + gj.v1 ** 2) / (P * Q)
    return lhs - rhs


def type1_reduction_residual(s: TranslationSurface, x: float, y: float) -> float:
    """LHS - RHS of the once-differentiated, separated type-I equation

        (1/g')(g''/(1+g'^2))' + (1/f')(f''/(1+f'^2))'
            = 8 f'' g'' / ((1+f'^2)^2 (1+g'^2)^2),

    evaluated with order-3 jets ((h''/(1+h'^2))' = (h'''(1+h'^2) - 2h'h''^2)
    / (1+h'^2)^2).
    """
    if s.kind is not Kind.TYPE_I:
        raise UsageError("type1_reduction_residual requires a type I surface")
    _check_domain(s, x, y)
    fj, gj = s.f(x), s.g(y)
    if fj.v1 == 0.0 or gj.v1 == 0.0:
        raise SingularLocusError(
            f"f'({x}) = {fj.v1}, g'({y}) = {gj.v1}: the equation divides by f'g'"
        )
    P = 1.0 + fj.v1 ** 2
    Q = 1.0 + gj.v1 ** 2
    dA = (fj.v3 * P - 2.0 * fj.v1 * fj.v2 ** 2) / (P * P)
    dB = (gj.v3 * Q - 2.0 * gj.v1 * gj.v2 ** 2) / (Q * Q)
    lhs = dB / gj.v1 + dA / fj.v1
    rhs = 8.0 * fj.v2 * gj.v2 / (P * P * Q * Q)
    return lhs - rhs


# -- named surfaces ---------------------------------------------------


def scherk(a: float, domain=None) -> TranslationSurface:
    """Scherk's Euclidean minimal surface z = (1/a) log|cos(ax)/cos(ay)|."""
    if a == 0.0:
        raise ValueError("scherk requires a != 0")
    f = log_cos(a, 1.0 / a)
    g = log_cos(a, -1.0 / a)
    if domain is None:
        domain = (f.domain, g.domain)
    return TranslationSurface(Kind.TYPE_I, f, g, domain)


def geodesic_plane(m: float, n: float, p: float, domain) -> TranslationSurface:
    """The type-II family f = mx+n, g = p: vertical planes, totally geodesic."""
    return TranslationSurface(Kind.TYPE_II, linear(m, n), constant(p), domain)


def simpson(fn: Callable[[float], float], lo: float, hi: float, nodes: int = 129) -> float:
    """Composite Simpson on an odd uniform grid; deterministic quadrature."""
    if nodes % 2 == 0:
        nodes += 1
    xs = np.linspace(lo, hi, nodes)
    ys = np.array([fn(x) for x in xs])
    h = (hi - lo) / (nodes - 1)
    w = np.ones(nodes)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(h / 3.0 * (w @ ys))


def plane_family_distance(s: TranslationSurface) -> float:
    """Integral of |f''|^2 + |g'|^2 over the domain; zero exactly on the
    geodesic-plane family f = mx+n, g = const."""
    if s.kind is not Kind.TYPE_II:
        raise UsageError("plane_family_distance requires a type II surface")
    (u0, u1), (v0, v1) = s.domain
    df = simpson(lambda x: s.f(x).v2 ** 2, u0, u1)
    dg = simpson(lambda z: s.g(z).v1 ** 2, v0, v1)
    return df + dg


# -- reference (non-translation) patches ------------------------------


@dataclass(frozen=True)
class ParametricPatch:
    """A generic patch given by closed-form position and partials."""

    position: Callable[[float, float], np.ndarray]
    partials: Callable[[float, float], tuple]
    domain: tuple[tuple[float, float], tuple[float, float]]

    def jet(self, u: float, v: float) -> ImmersionJet:
        (u0, u1), (v0, v1) = self.domain
        if not (u0 <= u <= u1 and v0 <= v <= v1):
            raise DomainError(f"({u}, {v}) outside patch domain {self.domain}")
        Xu, Xv, Xuu, Xuv, Xvv = self.partials(u, v)
        return ImmersionJet(self.position(u, v), Xu, Xv, Xuu, Xuv, Xvv)


def horosphere(c: float, extent: float = 2.0) -> ParametricPatch:
    """The surface z = c > 0, oriented with upward normal."""
    if c <= 0.0:
        raise HalfSpaceError(f"horosphere level c = {c} <= 0")
    return ParametricPatch(
        position=lambda u, v: np.array([u, v, c]),
        partials=lambda u, v: (
            np.array([1.0, 0.0, 0.0]),
            np.array([0.0, 1.0, 0.0]),
            np.zeros(3),
            np.zeros(3),
            np.zeros(3),
        ),
        domain=((-extent, extent), (-extent, extent)),
    )


def vertical_plane(y0: float, extent: float = 2.0, z_range=(0.1, 4.0)) -> ParametricPatch:
    """The plane y = y0: a totally geodesic plane of the half-space model."""
    return ParametricPatch(
        position=lambda u, v: np.array([u, y0, v]),
        partials=lambda u, v: (
            np.array([1.0, 0.0, 0.0]),
            np.array([0.0, 0.0, 1.0]),
            np.zeros(3),
            np.zeros(3),
            np.zeros(3),
        ),
        domain=((-extent, extent), z_range),
    )


def hemisphere(r: float, center=(0.0, 0.0), polar_cap: float = 0.999) -> ParametricPatch:
    """Upper hemisphere of radius r centered on the ideal boundary z = 0.

    Parameterized by spherical angles (theta, phi) with phi in
    (0, polar_cap * pi/2) so every point stays strictly inside z > 0.
    Totally geodesic: H = 0 everywhere.
    """
    if r <= 0.0:
        raise ValueError(f"hemisphere radius r = {r} <= 0")
    cx, cy = center

    def pos(th, ph):
        return np.array(
            [cx + r * math.sin(ph) * math.cos(th), cy + r * math.sin(ph) * math.sin(th), r * math.cos(ph)]
        )

    def parts(th, ph):
        st, ct = math.sin(th), math.cos(th)
        sp, cp = math.sin(ph), math.cos(ph)
        Xu = np.array([-r * sp * st, r * sp * ct, 0.0])
        Xv = np.array([r * cp * ct, r * cp * st, -r * sp])
        Xuu = np.array([-r * sp * ct, -r * sp * st, 0.0])
        Xuv = np.array([-r * cp * st, r * cp * ct, 0.0])
        Xvv = np.array([-r * sp * ct, -r * sp * st, -r * cp])
        return Xu, Xv, Xuu, Xuv, Xvv

    return ParametricPatch(
        position=pos,
        partials=parts,
        domain=((0.0, 2.0 * math.pi), (1e-3, polar_cap * math.pi / 2.0)),
    )
