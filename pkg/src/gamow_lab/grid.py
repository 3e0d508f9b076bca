"""Energy grids and sampled complex wave functions.

Everything downstream works in the energy representation: a wave function
is a vector of complex amplitudes on a fixed grid of real energies, and
integrals over energy become quadrature sums.  Units use hbar = 1, so
times are measured in inverse energy.

Grids are uniform with trapezoidal weights.  Infinite and half-infinite
integration domains are handled by truncation; :func:`lorentzian_tail_bound`
reports the analytic mass a unit Lorentzian leaves outside a given grid so
callers can judge whether a truncation radius is adequate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import IncompatibleGrids, InvalidArgument

FULL_LINE = "full-line"
HALF_LINE = "half-line"

ROLE_STATE = "state"
ROLE_OBSERVABLE = "observable"

H2_PLUS = "H2_plus"
H2_MINUS = "H2_minus"
UNKNOWN = "unknown"

_MIN_POINTS = 8

# role -> hardy classes it may legally carry (prepared states live in
# H2_minus, registered observables in H2_plus)
_ALLOWED_CLASSES = {
    ROLE_STATE: (H2_MINUS, UNKNOWN),
    ROLE_OBSERVABLE: (H2_PLUS, UNKNOWN),
}


def _readonly(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class EnergyGrid:
    """Ordered real energy samples with positive quadrature weights.

    ``kind`` is either ``"full-line"`` (a truncated window on the whole
    real axis, symmetric about its center) or ``"half-line"`` (a window
    ``[0, E_max]``).
    """

    points: np.ndarray
    weights: np.ndarray
    kind: str

    def __post_init__(self):
        pts = _readonly(np.asarray(self.points, dtype=float))
        wts = _readonly(np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        if self.kind not in (FULL_LINE, HALF_LINE):
            raise InvalidArgument(f"unknown grid kind {self.kind!r}")
        if pts.ndim != 1 or wts.ndim != 1 or pts.size != wts.size:
            raise InvalidArgument("points and weights must be 1-d and equal length")
        if pts.size < _MIN_POINTS:
            raise InvalidArgument(f"need at least {_MIN_POINTS} grid points")
        if not np.all(np.diff(pts) > 0):
            raise InvalidArgument("grid points must be strictly increasing")
        if not np.all(wts > 0):
            raise InvalidArgument("quadrature weights must be strictly positive")
        if self.kind == HALF_LINE and pts[0] < 0:
            raise InvalidArgument("half-line grid must start at E >= 0")
        if self.kind == FULL_LINE:
            c = self.center
            asym = np.max(np.abs((pts - c) + (pts - c)[::-1]))
            scale = max(abs(pts[0]), abs(pts[-1]), 1.0)
            if asym > 64 * np.finfo(float).eps * scale:
                raise InvalidArgument("full-line grid must be symmetric about its center")

    # -- basic queries -------------------------------------------------

    @property
    def n(self):
        return self.points.size

    def __len__(self):
        return self.points.size

    @property
    def center(self):
        return 0.5 * (self.points[0] + self.points[-1])

    def _uniformity_slack(self):
        # linspace spacings jitter by ~1 ulp of the endpoint magnitude
        scale = max(abs(self.points[0]), abs(self.points[-1]), 1.0)
        return 16 * np.finfo(float).eps * scale

    @property
    def spacing(self):
        """Uniform spacing; raises if the grid is not uniform."""
        if not self.is_uniform:
            raise InvalidArgument("grid is not uniform")
        return float((self.points[-1] - self.points[0]) / (self.n - 1))

    @property
    def is_uniform(self):
        d = np.diff(self.points)
        return bool(np.max(np.abs(d - d.mean())) <= self._uniformity_slack())

    # equality is exact: same kind and bit-identical samples, so two
    # grids compare equal only if built from the same parameters
    def __eq__(self, other):
        if not isinstance(other, EnergyGrid):
            return NotImplemented
        return (self.kind == other.kind
                and np.array_equal(self.points, other.points)
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.kind, self.points.tobytes(), self.weights.tobytes()))

    # -- serialization -------------------------------------------------

    def to_json(self):
        return json.dumps({"kind": self.kind,
                           "points": self.points.tolist(),
                           "weights": self.weights.tolist()})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(points=np.asarray(d["points"], dtype=float),
                   weights=np.asarray(d["weights"], dtype=float),
                   kind=d["kind"])


def _trapezoid_weights(n, h):
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    return w


def make_line_grid(center, half_width, n):
    """Uniform full-line grid on [center - half_width, center + half_width].

    Trapezoidal weights, so the weights sum to ``2 * half_width`` exactly.
    """
    if half_width <= 0:
        raise InvalidArgument("half_width must be positive")
    if n < _MIN_POINTS:
        raise InvalidArgument(f"n must be at least {_MIN_POINTS}")
    pts = np.linspace(center - half_width, center + half_width, int(n))
    h = 2.0 * half_width / (int(n) - 1)
    return EnergyGrid(points=pts, weights=_trapezoid_weights(int(n), h), kind=FULL_LINE)


def make_halfline_grid(E_max, n):
    """Uniform half-line grid on [0, E_max] with trapezoidal weights."""
    if E_max <= 0:
        raise InvalidArgument("E_max must be positive")
    if n < _MIN_POINTS:
        raise InvalidArgument(f"n must be at least {_MIN_POINTS}")
    pts = np.linspace(0.0, float(E_max), int(n))
    h = float(E_max) / (int(n) - 1)
    return EnergyGrid(points=pts, weights=_trapezoid_weights(int(n), h), kind=HALF_LINE)


def lorentzian_tail_bound(grid, E_R, Gamma):
    """Probability mass of the unit Lorentzian outside the grid window.

    The Lorentzian (Gamma/2pi) / ((E - E_R)^2 + (Gamma/2)^2) integrates to
    one over the real line; this returns the exact mass it carries outside
    [points[0], points[-1]], i.e. the truncation error committed when its
    norm is computed on this grid.
    """
    if Gamma <= 0:
        raise InvalidArgument("Gamma must be positive")
    b = 0.5 * Gamma
    lo, hi = grid.points[0], grid.points[-1]
    inside = (np.arctan((hi - E_R) / b) - np.arctan((lo - E_R) / b)) / np.pi
    return float(1.0 - inside)


@dataclass(frozen=True, eq=False)
class SampledWaveFunction:
    """Complex amplitudes on an :class:`EnergyGrid`.

    ``role`` records what the function describes physically (a prepared
    state or a registered observable); ``hardy_class`` records its claimed
    analyticity class.  States may only claim ``H2_minus``, observables only
    ``H2_plus`` (or ``unknown`` in either case).  Constructors that need to
    override this pairing on purpose set ``labels["role_class_exempt"]``.
    """

    grid: EnergyGrid
    values: np.ndarray
    role: str = ROLE_STATE
    hardy_class: str = UNKNOWN
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = _readonly(np.asarray(self.values, dtype=complex))
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size != self.grid.n:
            raise InvalidArgument("values length must equal grid length")
        if not np.all(np.isfinite(vals.view(float))):
            raise InvalidArgument("wave function values must be finite")
        if self.role not in _ALLOWED_CLASSES:
            raise InvalidArgument(f"unknown role {self.role!r}")
        if self.hardy_class not in (H2_PLUS, H2_MINUS, UNKNOWN):
            raise InvalidArgument(f"unknown hardy_class {self.hardy_class!r}")
        if (self.hardy_class not in _ALLOWED_CLASSES[self.role]
                and not self.labels.get("role_class_exempt", False)):
            raise InvalidArgument(
                f"role {self.role!r} is incompatible with hardy_class "
                f"{self.hardy_class!r}")

    def with_values(self, values, hardy_class=None, role=None):
        """Copy of self with new values (same grid), optionally retagged."""
        return SampledWaveFunction(
            grid=self.grid, values=values,
            role=self.role if role is None else role,
            hardy_class=self.hardy_class if hardy_class is None else hardy_class,
            labels=dict(self.labels))

    def conj(self):
        """Complex conjugate; swaps the claimed Hardy class."""
        swap = {H2_PLUS: H2_MINUS, H2_MINUS: H2_PLUS, UNKNOWN: UNKNOWN}
        role = {H2_PLUS: ROLE_OBSERVABLE, H2_MINUS: ROLE_STATE,
                UNKNOWN: self.role}
        new_class = swap[self.hardy_class]
        return SampledWaveFunction(grid=self.grid, values=np.conj(self.values),
                                   role=role[new_class], hardy_class=new_class,
                                   labels=dict(self.labels))

    def to_json(self):
        return json.dumps({
            "grid": json.loads(self.grid.to_json()),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
            "role": self.role,
            "hardy_class": self.hardy_class,
            "labels": {k: v for k, v in self.labels.items()},
        })

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        grid = EnergyGrid(points=np.asarray(d["grid"]["points"], dtype=float),
                          weights=np.asarray(d["grid"]["weights"], dtype=float),
                          kind=d["grid"]["kind"])
        vals = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return cls(grid=grid, values=vals, role=d.get("role", ROLE_STATE),
                   hardy_class=d.get("hardy_class", UNKNOWN),
                   labels=d.get("labels", {}))


def inner_product(f, g):
    """Quadrature inner product sum_i w_i f*(E_i) g(E_i).

    Conjugate-linear in the first argument, linear in the second; the
    discrete form of the L2 pairing on the grid's window.
    """
    if f.grid != g.grid:
        raise IncompatibleGrids("wave functions live on different grids")
    return complex(np.sum(f.grid.weights * np.conj(f.values) * g.values))


def l2_norm(f):
    """sqrt(inner_product(f, f)); zero iff all values vanish."""
    return float(np.sqrt(np.sum(f.grid.weights * np.abs(f.values) ** 2)))
