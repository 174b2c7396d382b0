"""Energy efficiency of the clipped OFDM link.

Bits-per-joule metrics pairing the spectral-efficiency engine with the
load-dependent consumption models: the practical EE, its linear-amplifier
and lossless-amplifier bounds, the piecewise derivative of the linear-PA
bound, loading-factor optimizers (derivative root and explicit Lambert-W
approximation), and the window of loadings where spectral and energy
efficiency trade off against each other.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .power_models import doherty_pieces, pc_ideal, pc_nonlinear
from .se_engine import se, se_ideal, xi_se_opt
from .specfun import WBranch, lambert_w

__all__ = [
    "InfeasibleError",
    "EeBreakdown",
    "ee",
    "ee_linear",
    "ee_ideal",
    "ee_linear_derivative",
    "zeta",
    "xi_ee_opt",
    "pareto_window",
    "ee_breakdown",
    "ee_sweep",
]

_LN2 = math.log(2.0)


class InfeasibleError(RuntimeError):
    """The EE optimization hypotheses do not hold for this parameter set."""


@dataclass(frozen=True)
class EeBreakdown:
    """One EE evaluation with the quantities behind it.

    v1 and v2 are the active consumption piece's coefficients
    (pc = v1 + v2*sqrt(xi)); zeta is that piece's quasi-concavity threshold
    (v + sqrt(1+v^2))^2 / gamma^2 with v = v2/v1.
    """

    xi: float
    se_bits: float
    pc_watts: float
    ee_bits_per_joule: float
    v1: float
    v2: float
    zeta: float


def _check_xi(xi):
    xi = float(xi)
    if not (math.isfinite(xi) and 0.0 < xi <= 1.0):
        raise ValueError("loading factor must lie in (0, 1]")
    return xi


def _active_piece(xi, pieces):
    for idx, (lo, hi, v1, v2) in enumerate(pieces, start=1):
        if lo < xi <= hi:
            return idx, v1, v2
    raise ValueError("loading factor outside the piecewise consumption model")


def zeta(v1, v2, gamma):
    """Quasi-concavity threshold of the linear-PA EE on one consumption piece.

    Below this loading the square-root consumption growth outruns the rate
    term and the EE bound is increasing; the optimizers assume their root
    lies above it.
    """
    if v1 <= 0.0:
        raise ValueError("zeta requires v1 > 0")
    v = v2 / v1
    return (v + math.sqrt(1.0 + v * v)) ** 2 / gamma**2


def ee(xi, scenario, power_params, n_ways=2, tol=1e-8, method="integral"):
    """Practical energy efficiency, bits per joule.

    Bandwidth times the true spectral efficiency over the Doherty-model
    consumed power at the same loading.
    """
    xi = _check_xi(xi)
    rate = scenario.bandwidth * se(xi, scenario, tol=tol, method=method)
    return rate / pc_nonlinear(xi, power_params, n_ways=n_ways)


def ee_linear(xi, scenario, power_params, n_ways=2):
    """EE bound with a distortion-free amplifier but real consumption."""
    xi = _check_xi(xi)
    rate = scenario.bandwidth * se_ideal(xi, scenario)
    return rate / pc_nonlinear(xi, power_params, n_ways=n_ways)


def ee_ideal(xi, scenario, power_params):
    """EE bound with a distortion-free amplifier and lossless consumption."""
    xi = _check_xi(xi)
    rate = scenario.bandwidth * se_ideal(xi, scenario)
    return rate / pc_ideal(xi, power_params, scenario.gain)


def ee_linear_derivative(xi, scenario, power_params, n_ways=2):
    """d ee_linear / d xi on the active consumption piece.

    At a piece boundary the derivative is the one-sided value of the piece
    the boundary belongs to (upper-inclusive pieces).
    """
    xi = _check_xi(xi)
    _, v1, v2 = _active_piece(xi, doherty_pieces(power_params, n_ways))
    gam = scenario.gamma
    root = math.sqrt(xi)
    log_term = math.log2(1.0 + gam * xi)
    inner = (2.0 / _LN2) * gam * (v1 * root + v2 * xi) / (1.0 + gam * xi) - v2 * log_term
    return scenario.bandwidth / (2.0 * root * (v1 + v2 * root) ** 2) * inner


def _derivative_root_on_piece(scenario, power_params, n_ways, lo, hi):
    # sign factor of the derivative on (lo, hi]: the bracketed term
    gam = scenario.gamma

    def g(x):
        _, v1, v2 = _active_piece(x, doherty_pieces(power_params, n_ways))
        r = math.sqrt(x)
        return (2.0 / _LN2) * gam * (v1 * r + v2 * x) / (1.0 + gam * x) - v2 * math.log2(
            1.0 + gam * x
        )

    grid = np.geomspace(lo, hi, 64)
    vals = np.asarray([g(x) for x in grid])
    change = np.nonzero(np.diff(np.sign(vals)) != 0)[0]
    if change.size == 0:
        return None
    a, b = float(grid[change[0]]), float(grid[change[0] + 1])
    fa = g(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = g(m)
        if fa * fm <= 0.0:
            b = m
        else:
            a, fa = m, fm
        if b - a <= 1e-14 * max(1.0, b):
            break
    return 0.5 * (a + b)


def xi_ee_opt(scenario, power_params, method="closed_form", n_ways=2):
    """Loading factor maximizing the linear-PA EE bound, plus the piece index.

    exact: per consumption piece, find the root of the EE derivative and
    clamp it into the piece's admissible window (piece 1 into
    [zeta, 1/n_ways^2], piece 2 into [1/n_ways^2, 1]); the candidate with
    the larger ee_linear wins, ties resolved toward the smaller loading.
    closed_form: same procedure with the explicit principal-branch Lambert-W
    approximation (1/gamma)*exp(2 + 2*W(sqrt(gamma)/(e*v))) per piece.
    """
    if method not in ("exact", "closed_form"):
        raise ValueError("method must be 'exact' or 'closed_form'")
    pieces = doherty_pieces(power_params, n_ways)
    gam = scenario.gamma
    first_lo, first_hi, v1_first, v2_first = pieces[0]
    if v1_first <= 0.0:
        raise InfeasibleError("fixed draw must be positive for the EE model")
    zeta_first = zeta(v1_first, v2_first, gam)
    if zeta_first >= 1.0:
        raise InfeasibleError(
            "quasi-concavity threshold zeta = %.6g reaches the full-load "
            "boundary; the EE bound has no interior rise to optimize "
            "(gamma = %.6g, v = %.6g)" % (zeta_first, gam, v2_first / v1_first)
        )
    candidates = []
    for idx, (lo, hi, v1, v2) in enumerate(pieces, start=1):
        clamp_lo = max(zeta(v1, v2, gam), lo) if v1 > 0.0 else lo
        clamp_lo = min(max(clamp_lo, 1e-300), hi)
        if method == "exact":
            root = _derivative_root_on_piece(scenario, power_params, n_ways, max(lo, 1e-12), hi)
            if root is None:
                # derivative one-signed on the piece: an endpoint is optimal
                end_lo, end_hi = max(clamp_lo, 1e-12), hi
                root = (
                    end_lo
                    if ee_linear(end_lo, scenario, power_params, n_ways)
                    >= ee_linear(end_hi, scenario, power_params, n_ways)
                    else end_hi
                )
        else:
            if v1 <= 0.0:
                warnings.warn(
                    "piece %d has non-positive v1; closed-form candidate "
                    "replaced by the better piece endpoint" % idx,
                    RuntimeWarning,
                )
                end_lo, end_hi = max(clamp_lo, 1e-12), hi
                root = (
                    end_lo
                    if ee_linear(end_lo, scenario, power_params, n_ways)
                    >= ee_linear(end_hi, scenario, power_params, n_ways)
                    else end_hi
                )
            else:
                arg = math.sqrt(gam) / (math.e * (v2 / v1))
                root = math.exp(2.0 + 2.0 * lambert_w(arg, WBranch.PRINCIPAL)) / gam
        clamped = min(max(root, clamp_lo), hi)
        candidates.append((clamped, idx))
    best = None
    best_val = None
    for cand, idx in candidates:
        val = ee_linear(cand, scenario, power_params, n_ways)
        if best is None:
            best, best_val = (cand, idx), val
            continue
        margin = 1e-15 * max(1.0, abs(best_val))
        if val > best_val + margin or (abs(val - best_val) <= margin and cand < best[0]):
            best, best_val = (cand, idx), val
    xi_star, piece = best
    idx, v1, v2 = _active_piece(xi_star, pieces)
    if v1 > 0.0 and xi_star < zeta(v1, v2, gam) * (1.0 - 1e-12):
        raise InfeasibleError(
            "optimizer landed below the quasi-concavity threshold; the "
            "hypothesis xi* >= zeta fails for this parameter set"
        )
    return xi_star, piece


def pareto_window(scenario, power_params, n_ways=2):
    """Loading interval between the approximated EE and SE optima.

    Inside the window the approximated SE and EE move in opposite directions
    as the loading changes (a genuine tradeoff); outside it both improve
    toward the window. Endpoints use the closed-form optimizers.
    """
    xi_se = xi_se_opt(scenario, method="closed_form")
    xi_ee, _ = xi_ee_opt(scenario, power_params, method="closed_form", n_ways=n_ways)
    return (min(xi_ee, xi_se), max(xi_ee, xi_se))


def ee_breakdown(xi, scenario, power_params, n_ways=2, tol=1e-8, method="integral"):
    """Full accounting of one EE evaluation (active piece included)."""
    xi = _check_xi(xi)
    pieces = doherty_pieces(power_params, n_ways)
    _, v1, v2 = _active_piece(xi, pieces)
    se_bits = se(xi, scenario, tol=tol, method=method)
    pc = pc_nonlinear(xi, power_params, n_ways=n_ways)
    return EeBreakdown(
        xi=xi,
        se_bits=se_bits,
        pc_watts=pc,
        ee_bits_per_joule=scenario.bandwidth * se_bits / pc,
        v1=v1,
        v2=v2,
        zeta=zeta(v1, v2, scenario.gamma) if v1 > 0.0 else math.nan,
    )


def ee_sweep(scenario, power_params, xi_values, n_ways=2, tol=1e-8, method="integral"):
    """Evaluate the EE family over a loading grid.

    Returns a dict of arrays with keys xi, ee_exact, ee_linear, ee_ideal,
    pc_watts (one entry per grid point).
    """
    xis = np.atleast_1d(np.asarray(xi_values, dtype=float))
    out = {
        "xi": xis.copy(),
        "ee_exact": np.empty_like(xis),
        "ee_linear": np.empty_like(xis),
        "ee_ideal": np.empty_like(xis),
        "pc_watts": np.empty_like(xis),
    }
    for i, x in enumerate(xis):
        out["ee_exact"][i] = ee(x, scenario, power_params, n_ways=n_ways, tol=tol, method=method)
        out["ee_linear"][i] = ee_linear(x, scenario, power_params, n_ways=n_ways)
        out["ee_ideal"][i] = ee_ideal(x, scenario, power_params)
        out["pc_watts"][i] = pc_nonlinear(x, power_params, n_ways=n_ways)
    return out
