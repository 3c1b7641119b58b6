"""Fit a single best helix to an emitter cloud and derive its estimates.

Pipeline: principal directions of the centered cloud give axis candidates,
an algebraic circle fit of the axis-normal projection gives the radius and
center, and a linear regression of unwrapped azimuth against the axial
coordinate gives the pitch, phase, and handedness.  A damped least-squares
pass over all seven parameters then refines each viable candidate, and the
lowest-cost solution wins.

The azimuth unwrapping assumes consecutive points (in axial order) advance
by less than pi; clouds sampled more coarsely than half a turn per step get
a FitWarning because the recovered pitch may alias.

Line density is emitters per unit arc length, with arc length per unit
axial rise sqrt(1 + (2 pi R / b)^2).
"""

import dataclasses
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .discrete import EmitterCloud
from .spectra import EmitterPhysics

_TWO_PI = 2.0 * math.pi
_DEGENERACY_RTOL = 1e-10


class CloudFormatError(ValueError):
    pass


class FitDegeneracyError(ValueError):
    pass


class FitWarning(UserWarning):
    """Raised as a warning when the fit is formally fine but suspect."""


class Handedness(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class HelixFit:
    axis_direction: np.ndarray  # unit 3-vector
    axis_point: np.ndarray  # a point on the axis, nm
    R: float  # radius, nm
    b: float  # pitch, nm
    phase: float  # azimuth at the axis_point plane, radians
    handedness: Handedness
    rms_residual: float  # root-mean-square point-to-curve distance, nm
    n0: float  # line density along the fitted curve, nm^-1

    def __post_init__(self):
        axis = np.asarray(self.axis_direction, dtype=float)
        point = np.asarray(self.axis_point, dtype=float)
        if axis.shape != (3,) or point.shape != (3,):
            raise ValueError("axis_direction and axis_point must be 3-vectors")
        if abs(np.linalg.norm(axis) - 1.0) > 1e-12:
            raise ValueError("axis_direction must be a unit vector")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise ValueError(f"R must be > 0, got {self.R}")
        if self.b == 0.0 or not math.isfinite(self.b):
            raise ValueError(f"b must be nonzero and finite, got {self.b}")
        if not (self.rms_residual >= 0.0):
            raise ValueError(f"rms_residual must be >= 0, got {self.rms_residual}")
        object.__setattr__(self, "axis_direction", axis)
        object.__setattr__(self, "axis_point", point)


@dataclass(frozen=True)
class EstimateReport:
    Omega: float  # lambda0 / b
    r: float  # k0 R
    gamma_max_over_gamma: float  # n0 lambda0
    trapped_percent: float  # in [0, 100)


def load_emitters(path) -> EmitterCloud:
    """Read a cloud file: one `x y z` triple (nm) per line, `#` comments."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) != 3:
                raise CloudFormatError(
                    f"{path}:{lineno}: expected 3 coordinates, got {len(parts)}"
                )
            try:
                triple = [float(p) for p in parts]
            except ValueError:
                raise CloudFormatError(
                    f"{path}:{lineno}: non-numeric coordinate in {text!r}"
                ) from None
            if not all(math.isfinite(v) for v in triple):
                raise CloudFormatError(f"{path}:{lineno}: non-finite coordinate")
            rows.append(triple)
    if not rows:
        raise CloudFormatError(f"{path}: no emitters found")
    return EmitterCloud(np.array(rows, dtype=float))


def _perp_frame(axis):
    """Right-handed orthonormal (e1, e2) completing axis: e1 x e2 = axis."""
    pick = np.argmin(np.abs(axis))
    seed = np.zeros(3)
    seed[pick] = 1.0
    e1 = seed - np.dot(seed, axis) * axis
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return e1, e2


def _circle_fit(u, w):
    """Algebraic least-squares circle through (u, w): center and radius."""
    a = np.column_stack([2.0 * u, 2.0 * w, np.ones_like(u)])
    rhs = u * u + w * w
    (c1, c2, t), *_ = np.linalg.lstsq(a, rhs, rcond=None)
    r2 = t + c1 * c1 + c2 * c2
    if not (r2 > 0.0):
        return None
    return c1, c2, math.sqrt(r2)


def _phase_regression(z, phi):
    """Slope and intercept of unwrapped azimuth against axial coordinate."""
    order = np.argsort(z, kind="stable")
    zs = z[order]
    if zs[-1] - zs[0] <= 0.0:
        return None
    unwrapped = np.unwrap(phi[order])
    slope, intercept = np.polyfit(zs, unwrapped, 1)
    return slope, intercept


def _wrap(delta):
    return np.angle(np.exp(1j * delta))


def _candidate_fit(centered, axis):
    """Initial (c1, c2, R, slope, phi0) in the frame of axis, plus score."""
    e1, e2 = _perp_frame(axis)
    u = centered @ e1
    w = centered @ e2
    z = centered @ axis
    circ = _circle_fit(u, w)
    if circ is None:
        return None
    c1, c2, radius = circ
    phi = np.arctan2(w - c2, u - c1)
    reg = _phase_regression(z, phi)
    if reg is None:
        return None
    slope, phi0 = reg
    rho = np.hypot(u - c1, w - c2)
    res = np.concatenate([rho - radius, radius * _wrap(phi - slope * z - phi0)])
    score = float(np.mean(res * res))
    return score, (c1, c2, radius, slope, phi0)


def _frame_of(params, v0, e1_0, e2_0):
    """Helix frame for refinement parameters (t1, t2 tilt v0 within its frame)."""
    t1, t2 = params[0], params[1]
    axis = v0 + t1 * e1_0 + t2 * e2_0
    axis = axis / np.linalg.norm(axis)
    e1 = e1_0 - np.dot(e1_0, axis) * axis
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return axis, e1, e2


def _residuals(params, centered, v0, e1_0, e2_0):
    axis, e1, e2 = _frame_of(params, v0, e1_0, e2_0)
    c1, c2, radius, slope, phi0 = params[2:]
    rel = centered - c1 * e1 - c2 * e2
    z = rel @ axis
    u = rel @ e1
    w = rel @ e2
    rho = np.hypot(u, w)
    phi = np.arctan2(w, u)
    return np.concatenate([rho - radius, radius * _wrap(phi - slope * z - phi0)])


def _point_curve_rms(centered, axis, e1, e2, c1, c2, radius, slope, phi0):
    """RMS of true point-to-curve distances, each via a bracketed 1D search."""
    rel = centered - c1 * e1 - c2 * e2
    z = rel @ axis
    period = _TWO_PI / abs(slope)

    def dist2_at(point, zc):
        delta = point - (
            radius * math.cos(slope * zc + phi0) * e1
            + radius * math.sin(slope * zc + phi0) * e2
            + zc * axis
        )
        return float(delta @ delta)

    total = 0.0
    for point, zi in zip(rel, z):
        # coarse scan over one period around the point, then polish; the
        # curve passes each neighborhood once per turn so this is global
        grid = zi + np.linspace(-0.5 * period, 0.5 * period, 17)
        vals = [dist2_at(point, g) for g in grid]
        k = int(np.argmin(vals))
        h = period / 16.0
        best = scipy.optimize.minimize_scalar(
            lambda zc: dist2_at(point, zc),
            bounds=(grid[k] - h, grid[k] + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        total += min(best.fun, vals[k])
    return math.sqrt(total / len(z))


def fit_helix(cloud: EmitterCloud) -> HelixFit:
    """Best single helix through the cloud.

    Tries each principal direction of the centered cloud as the axis,
    refines all seven parameters from every viable start with a damped
    least-squares pass on the cylindrical residuals (radial mismatch and
    radius-scaled wrapped phase mismatch), and keeps the lowest-cost
    solution.
    """
    pos = cloud.positions
    n = cloud.count
    if n < 8:
        raise ValueError(f"need at least 8 emitters to fit a helix, got {n}")
    centroid = pos.mean(axis=0)
    centered = pos - centroid
    svals = np.linalg.svd(centered, compute_uv=False)
    if svals[1] <= _DEGENERACY_RTOL * svals[0]:
        raise FitDegeneracyError("cloud is collinear; helix axis is undetermined")
    if svals[2] <= _DEGENERACY_RTOL * svals[0]:
        raise FitDegeneracyError("cloud is coplanar; pitch is undetermined")
    _, _, vt = np.linalg.svd(centered, full_matrices=False)

    eps = np.finfo(float).eps
    best = None
    for row in vt:
        # face each axis so its dominant component is positive; slope and
        # handedness are frame-independent under this flip
        v0 = -row if row[np.argmax(np.abs(row))] < 0.0 else row
        cand = _candidate_fit(centered, v0)
        if cand is None or cand[1][3] == 0.0:
            continue
        e1_0, e2_0 = _perp_frame(v0)
        x0 = np.array([0.0, 0.0, *cand[1]])
        # near-eps tolerances with Jacobian scaling: the tilt parameters are
        # orders of magnitude more sensitive than the rest, and a leftover
        # 1e-10 rad tilt already costs span * tilt in residual
        sol = scipy.optimize.least_squares(
            _residuals, x0, args=(centered, v0, e1_0, e2_0), method="trf",
            x_scale="jac", ftol=2 * eps, xtol=2 * eps, gtol=None,
            max_nfev=2000,
        )
        if best is None or sol.cost < best[0].cost:
            best = (sol, v0, e1_0, e2_0)
    if best is None:
        raise FitDegeneracyError(
            "no principal direction admits a circle-plus-phase fit"
        )
    sol, v0, e1_0, e2_0 = best
    axis, e1, e2 = _frame_of(sol.x, v0, e1_0, e2_0)
    c1, c2, radius, slope, phi0 = sol.x[2:]
    if slope == 0.0 or radius <= 0.0:
        raise FitDegeneracyError("refinement collapsed the helix")

    z = (centered - c1 * e1 - c2 * e2) @ axis
    dz = np.diff(np.sort(z))
    if np.any(np.abs(slope) * dz >= math.pi):
        warnings.warn(
            "adjacent points advance by >= pi in azimuth; pitch may alias",
            FitWarning,
            stacklevel=2,
        )

    span = float(z.max() - z.min())
    pitch = _TWO_PI / abs(slope)
    rms = _point_curve_rms(centered, axis, e1, e2, c1, c2, radius, slope, phi0)
    density = _density(n, span, radius, pitch)
    return HelixFit(
        axis_direction=axis,
        axis_point=centroid + c1 * e1 + c2 * e2,
        R=float(radius),
        b=float(pitch),
        phase=float(_wrap(phi0)),
        handedness=Handedness.RIGHT if slope > 0.0 else Handedness.LEFT,
        rms_residual=float(rms),
        n0=float(density),
    )


def _density(count, span, radius, pitch):
    if span <= 0.0:
        raise FitDegeneracyError("zero axial extent; line density is undefined")
    arc = span * math.sqrt(1.0 + (_TWO_PI * radius / pitch) ** 2)
    return count / arc


def line_density(cloud: EmitterCloud, fit: HelixFit) -> float:
    """Emitters per unit arc length of the fitted curve across the cloud span."""
    z = (cloud.positions - fit.axis_point) @ fit.axis_direction
    span = float(z.max() - z.min())
    return _density(cloud.count, span, fit.R, fit.b)


def estimate(fit: HelixFit, physics: EmitterPhysics) -> EstimateReport:
    """Dimensionless parameters and the peak-rate estimate for a fitted helix.

    The peak collective rate over the spectrum equals n0 lambda0 times the
    unit-normalized maximum, so gamma_max_over_gamma = n0 lambda0; the
    trapped share is the measure (Omega - 2)/Omega of the axial-momentum
    line, zero below Omega = 2.
    """
    omega = physics.lambda0 / fit.b
    r = physics.k0 * fit.R
    trapped = 100.0 * (omega - 2.0) / omega if omega >= 2.0 else 0.0
    return EstimateReport(
        Omega=omega,
        r=r,
        gamma_max_over_gamma=fit.n0 * physics.lambda0,
        trapped_percent=trapped,
    )


def with_density(fit: HelixFit, n0: float) -> HelixFit:
    """Copy of a fit with an externally supplied line density."""
    if not (n0 > 0.0 and math.isfinite(n0)):
        raise ValueError(f"n0 must be > 0, got {n0}")
    return dataclasses.replace(fit, n0=n0)
