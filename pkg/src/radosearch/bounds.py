"""Bound formulas and the coloring constructions behind them.

Each formula takes the homogeneous Rado number R (or the length n of an
excellent coloring) as an explicit argument; nothing here calls the search
engine. Shifts are passed as the positive magnitude b, with the sign carried
by the function name: ``*_neg`` handles c.x = x_k - b, ``*_pos`` handles
c.x = x_k + b.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

from .equation import Coloring, Equation, ceil_div, find_monochromatic, is_excellent_coloring


class PreconditionError(ValueError):
    """A bound or construction was called outside the range where it holds."""


class ConstructionError(AssertionError):
    """A construction produced a coloring that failed its goodness check."""


def _ratio(coeffs: Sequence[int], b: int) -> tuple[int, int]:
    s = sum(coeffs) - 1
    if s < 1:
        raise PreconditionError(f"s = sum(coeffs) - 1 must be positive, got {s} for {tuple(coeffs)}")
    if b < 1:
        raise PreconditionError(f"b must be positive, got {b}")
    if b % s:
        raise PreconditionError(f"s = {s} does not divide b = {b}")
    return s, b // s


def upper_bound_neg(coeffs: Sequence[int], b: int, R: int) -> int:
    if R < 1:
        raise PreconditionError("R must be >= 1")
    _, q = _ratio(coeffs, b)
    return (q + 1) * R - q


def lower_bound_neg(coeffs: Sequence[int], b: int, n: int) -> int:
    if n < 1:
        raise PreconditionError("n must be >= 1")
    _, q = _ratio(coeffs, b)
    return (q + 1) * n + 1


def decompose_pos(coeffs: Sequence[int], b: int, R: int) -> tuple[int, int]:
    """Write b = s*(R*m - q) with m = ceil(b / (s*R)) and 0 <= q <= R-1."""
    if R < 1:
        raise PreconditionError("R must be >= 1")
    s, ratio = _ratio(coeffs, b)
    m = ceil_div(ratio, R)
    q = R * m - ratio
    assert 0 <= q <= R - 1 and s * (R * m - q) == b
    return m, q


def upper_bound_pos(coeffs: Sequence[int], b: int, R: int) -> int:
    m, q = decompose_pos(coeffs, b, R)
    value = (R - 1) * m - q + 1
    _, ratio = _ratio(coeffs, b)
    assert value == ratio - ceil_div(ratio, R) + 1
    return value


def lower_bound_pos(coeffs: Sequence[int], b: int, n: int) -> int:
    if n < 1:
        raise PreconditionError("n must be >= 1")
    _, ratio = _ratio(coeffs, b)
    return ratio - ceil_div(ratio, n + 1) + 1


def trivial_bounds(coeffs: Sequence[int], b: int) -> tuple[int, int]:
    """Bounds that hold for every t, regular or not."""
    s, ratio = _ratio(coeffs, b)
    return ceil_div(b + 1, s + 1), ratio


def injection_neg(w: int, b: int, s: int) -> int:
    """Maps a solution of the homogeneous equation to one with shift -b."""
    if s < 1 or b % s:
        raise PreconditionError(f"need s >= 1 dividing b, got s={s}, b={b}")
    q = b // s
    return (q + 1) * w - q


def injection_pos(w: int, R: int, m: int, q: int) -> int:
    return (R - w) * m - q + w


def lift_j_max(coeffs: Sequence[int], b: int) -> int:
    """Largest j reached when a lifted coloring's solution is pulled back."""
    s, _ = _ratio(coeffs, b)
    j_max = ceil_div(s * b, b + s)
    if not 0 <= j_max <= s:
        raise ConstructionError(f"pull-back range 0..{j_max} exceeds 0..{s}")
    return j_max


def repeat_coloring(chi: Coloring, factor: int) -> Coloring:
    """Position i gets the color of ceil(i / factor)."""
    if factor < 1:
        raise PreconditionError("repeat factor must be >= 1")
    return Coloring(chi.num_colors, tuple(c for c in chi.colors for _ in range(factor)))


def _require_excellent(chi: Coloring, coeffs: Sequence[int]) -> None:
    if not is_excellent_coloring(coeffs, chi):
        raise PreconditionError(f"coloring {chi} is not excellent for coefficients {tuple(coeffs)}")


def _require_good(eq: Equation, col: Coloring) -> None:
    bad = find_monochromatic(eq, col)
    if bad is not None:
        raise ConstructionError(f"constructed coloring has monochromatic solution {bad.values} to {eq.pretty()}")


def lift_coloring_neg(chi: Coloring, coeffs: Sequence[int], b: int, *, _trusted: bool = False) -> Coloring:
    """Good coloring for c.x = x_k - b on [1, (b/s + 1) n] from an excellent chi."""
    _, ratio = _ratio(coeffs, b)
    if not _trusted:
        _require_excellent(chi, coeffs)
    lift_j_max(coeffs, b)
    alpha = repeat_coloring(chi, ratio + 1)
    _require_good(Equation(tuple(coeffs), -b), alpha)
    return alpha


def lift_coloring_pos(chi: Coloring, coeffs: Sequence[int], b: int) -> Coloring:
    """Good coloring for c.x = x_k + b on [1, n*m - q] from an excellent chi.

    Lifts chi for shift -s(m-1) onto [1, m n], keeps the first m n - q
    entries and reverses them. The reversal x -> (m n - q + 1) - x turns
    solutions for +b into solutions for -s(m-1).
    """
    s, _ = _ratio(coeffs, b)
    _require_excellent(chi, coeffs)
    n = len(chi)
    if n < 1:
        raise PreconditionError("chi must be non-empty")
    m, q = decompose_pos(coeffs, b, n + 1)
    if m == 1:
        alpha = chi
    else:
        alpha = lift_coloring_neg(chi, coeffs, s * (m - 1), _trusted=True)
    out = Coloring(chi.num_colors, alpha.colors[: m * n - q]).reversed()
    _require_good(Equation(tuple(coeffs), b), out)
    return out


@dataclass(frozen=True)
class Bound:
    value: int
    source: str  # construction behind the bound: injection_neg/_pos, lift_neg/_pos, trivial


@dataclass(frozen=True)
class BoundsReport:
    equation: Equation
    num_colors: int
    lower: Bound | None
    upper: Bound | None
    inputs_used: dict = field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return self.lower is not None and self.upper is not None and self.lower.value == self.upper.value

    def to_dict(self) -> dict:
        d = asdict(self)
        d["equation"] = {"coeffs": list(self.equation.coeffs), "shift": self.equation.shift}
        d["closed"] = self.closed
        return d


def bounds_report(
    eq: Equation,
    t: int,
    *,
    R: int | None = None,
    excellent_length: int | None = None,
) -> BoundsReport:
    """Strongest applicable bounds, tagged with the result each came from.

    ``R`` is the homogeneous t-color Rado number if known to exist; without it
    (and for positive shifts) the trivial bounds fill whichever side has
    nothing sharper. ``excellent_length`` is the length of a certified
    excellent t-coloring.
    """
    coeffs, shift = eq.coeffs, eq.shift
    if shift == 0:
        raise PreconditionError("bounds apply to non-zero shifts only")
    b = abs(shift)
    _ratio(coeffs, b)
    inputs = {"R": R, "excellent_length": excellent_length}
    lower = upper = None
    if shift < 0:
        if R is not None:
            upper = Bound(upper_bound_neg(coeffs, b, R), "injection_neg")
        if excellent_length:
            lower = Bound(lower_bound_neg(coeffs, b, excellent_length), "lift_neg")
    else:
        tl, tu = trivial_bounds(coeffs, b)
        upper = Bound(tu, "trivial")
        lower = Bound(tl, "trivial")
        if R is not None:
            ub = upper_bound_pos(coeffs, b, R)
            if ub <= tu:
                upper = Bound(ub, "injection_pos")
        if excellent_length:
            lb = lower_bound_pos(coeffs, b, excellent_length)
            if lb >= tl:
                lower = Bound(lb, "lift_pos")
    if lower is not None and upper is not None and lower.value > upper.value:
        raise AssertionError(f"inconsistent bounds {lower} > {upper} for {eq.pretty()}")
    return BoundsReport(eq, t, lower, upper, inputs)
