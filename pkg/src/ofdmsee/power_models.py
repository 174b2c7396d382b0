"""Transmitter power consumption models.

Load-dependent consumed power of a base-station transmitter built around a
multi-way Doherty amplifier, plus the affine reference model and the ideal
(output-only) lower bound. All loads are expressed through the input power
loading factor xi in (0, 1], where xi * p_max_out is the peak-rated output
power scaled by the load.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "PowerModelParams",
    "BS_PRESETS",
    "ppa_doherty",
    "pc_linear",
    "pc_nonlinear",
    "pc_ideal",
    "doherty_pieces",
    "pc_custom",
]


@dataclass(frozen=True)
class PowerModelParams:
    """Consumed-power model of one transmitter chain.

    p_max_out: peak RF output power in watts.
    p_fix: load-independent draw (baseband, cooling, supply overhead), watts.
    p_idle: draw in the inactive state, watts.
    c: slope of the affine draw model, so the chain adds c * p_out watts at
       output power p_out. The full-load PA draw is therefore c * p_max_out.
    """

    p_max_out: float
    p_fix: float
    p_idle: float
    c: float

    def __post_init__(self):
        for field in ("p_max_out", "p_fix", "p_idle", "c"):
            v = getattr(self, field)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{field} must be finite and positive")
        if self.p_idle > self.p_fix:
            raise ValueError("idle draw cannot exceed the fixed active draw")

    @property
    def p0(self):
        """Zero-load draw of the affine model, watts."""
        return self.p_fix

    @property
    def c0(self):
        """Full-load PA draw c * p_max_out, watts."""
        return self.c * self.p_max_out

    @classmethod
    def from_preset(cls, kind, **overrides):
        try:
            base = BS_PRESETS[kind]
        except KeyError:
            raise KeyError(
                f"unknown transmitter preset {kind!r}; choose from {sorted(BS_PRESETS)}"
            ) from None
        return replace(base, **overrides) if overrides else base


# (p_max_out W, p_fix W, p_idle W, c)
BS_PRESETS = {
    "macro": PowerModelParams(20.0, 130.0, 75.0, 4.7),
    "rrh": PowerModelParams(20.0, 84.0, 56.0, 2.8),
    "micro": PowerModelParams(6.3, 56.0, 39.0, 2.6),
    "pico": PowerModelParams(0.13, 6.8, 4.3, 4.0),
    "femto": PowerModelParams(0.05, 4.8, 2.9, 8.0),
}


def _check_ways(n_ways):
    if not isinstance(n_ways, (int, np.integer)) or n_ways < 1:
        raise ValueError("n_ways must be an integer >= 1")
    return int(n_ways)


def _check_xi(xi):
    x = np.asarray(xi, dtype=float)
    if x.size and (np.any(x <= 0.0) or np.any(x > 1.0)):
        raise ValueError("loading factor must lie in (0, 1]")
    return x


def _scalar_like(template, value):
    if np.isscalar(template) or np.ndim(template) == 0:
        return float(value)
    return value


def ppa_doherty(xi, p_full, n_ways=2):
    """DC draw of an n-way Doherty amplifier at loading xi.

    p_full is the amplifier's peak output power in watts. Draw follows the
    class-B square-root law, restarting its slope at the Doherty transition
    xi = 1/n_ways^2; peak efficiency pi/4 is reached both at the transition
    and at full load. n_ways=1 is a plain class-B stage.
    """
    x = _check_xi(xi)
    w = _check_ways(n_ways)
    if not (math.isfinite(p_full) and p_full > 0.0):
        raise ValueError("p_full must be finite and positive")
    scale = 4.0 * p_full / (w * math.pi)
    root = np.sqrt(x)
    low = scale * root
    high = scale * ((w + 1.0) * root - 1.0)
    out = np.where(x <= 1.0 / w**2, low, high)
    return _scalar_like(xi, out)


def _phi_doherty(x, w):
    # shape function of the Doherty draw, normalized so phi(1, w) == 1.0
    # exactly in floats; shares its breakpoint algebra with doherty_pieces
    root = np.sqrt(x)
    return np.where(x <= 1.0 / w**2, root / w, ((w + 1.0) * root - 1.0) / w)


def pc_linear(xi, params):
    """Affine consumed-power model p_fix + c * xi * p_max_out."""
    x = _check_xi(xi)
    out = params.p_fix + params.c0 * x
    return _scalar_like(xi, out)


def pc_nonlinear(xi, params, n_ways=2):
    """Consumed power with an n-way Doherty PA.

    p_fix + c * p_max_out * phi(xi), where phi is the normalized Doherty
    draw profile. Matches pc_linear exactly at full load xi = 1.
    """
    x = _check_xi(xi)
    w = _check_ways(n_ways)
    out = params.p_fix + params.c0 * _phi_doherty(x, w)
    return _scalar_like(xi, out)


def pc_ideal(xi, params, pa_gain):
    """Lower-bound draw with a lossless amplifier.

    Only the RF power actually added by the PA, (1 - 1/gain) * xi *
    p_max_out, is consumed, derated by the class-B peak efficiency pi/4
    relative to the same c slope.
    """
    x = _check_xi(xi)
    if not (math.isfinite(pa_gain) and pa_gain > 1.0):
        raise ValueError("pa_gain must be finite and exceed 1")
    out = params.p_fix + (math.pi / 4.0) * params.c * (1.0 - 1.0 / pa_gain) * x * params.p_max_out
    return _scalar_like(xi, out)


def doherty_pieces(params, n_ways=2):
    """Square-root segments of pc_nonlinear.

    Returns a list of (xi_lo, xi_hi, v1, v2) with consumed power
    v1 + v2 * sqrt(xi) on xi in (xi_lo, xi_hi]. Adjacent segments agree at
    the shared breakpoint.
    """
    w = _check_ways(n_ways)
    c0 = params.c0
    knee = 1.0 / w**2
    pieces = [(0.0, knee, params.p_fix, c0 / w)]
    if knee < 1.0:
        pieces.append((knee, 1.0, params.p_fix - c0 / w, c0 * (w + 1.0) / w))
    return pieces


def pc_custom(xi, pieces):
    """Evaluate a user piecewise draw model v1 + v2 * sqrt(xi).

    `pieces` is a sequence of (xi_lo, xi_hi, v1, v2) covering (0, 1] without
    gaps, as produced by doherty_pieces or built by hand (a class-A stage is
    a single piece with v2 = 0 and v1 its constant draw plus p_fix).
    """
    pieces = sorted(pieces, key=lambda p: p[0])
    if not pieces:
        raise ValueError("pieces must be non-empty")
    lo = pieces[0][0]
    if lo != 0.0:
        raise ValueError("pieces must start at xi = 0")
    for xi_lo, xi_hi, _, _ in pieces:
        if not (0.0 <= xi_lo < xi_hi <= 1.0):
            raise ValueError("each piece needs 0 <= xi_lo < xi_hi <= 1")
        if xi_lo != lo:
            raise ValueError("pieces must tile (0, 1] without gaps or overlap")
        lo = xi_hi
    if lo != 1.0:
        raise ValueError("pieces must end at xi = 1")
    x = _check_xi(xi)
    out = np.full_like(np.asarray(x, dtype=float), np.nan)
    root = np.sqrt(x)
    for xi_lo, xi_hi, v1, v2 in pieces:
        mask = (x > xi_lo) & (x <= xi_hi)
        out = np.where(mask, v1 + v2 * root, out)
    return _scalar_like(xi, out)
