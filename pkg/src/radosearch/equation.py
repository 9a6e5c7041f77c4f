"""Equations c1*x1 + ... + c_{k-1}*x_{k-1} = x_k + shift, colorings, and predicates.

Everything here is pure and side-effect free. Colors are 1-based integers and
positions are 1-based, so ``colors[i - 1]`` is the color of integer ``i``.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


def ceil_div(a: int, d: int) -> int:
    """Mathematical ceiling of a/d for d >= 1 (rounds toward +infinity)."""
    if d < 1:
        raise ValueError(f"ceil_div needs a positive divisor, got {d}")
    return -((-a) // d)


@dataclass(frozen=True)
class Equation:
    coeffs: tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("an equation needs at least one left-side coefficient")
        if any(c < 1 for c in coeffs):
            raise ValueError(f"coefficients must be positive, got {coeffs}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "shift", int(self.shift))

    @property
    def k(self) -> int:
        """Number of variables, including x_k."""
        return len(self.coeffs) + 1

    @property
    def s(self) -> int:
        return sum(self.coeffs) - 1

    def homogeneous(self) -> Equation:
        return Equation(self.coeffs, 0)

    def __str__(self) -> str:
        return format_equation(self)

    def pretty(self) -> str:
        left = " + ".join(
            (f"x{i}" if c == 1 else f"{c}*x{i}") for i, c in enumerate(self.coeffs, 1)
        )
        right = f"x{self.k}"
        if self.shift > 0:
            right += f" + {self.shift}"
        elif self.shift < 0:
            right += f" - {-self.shift}"
        return f"{left} = {right}"


@dataclass(frozen=True)
class Coloring:
    num_colors: int
    colors: tuple[int, ...] = ()

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        if self.num_colors < 1:
            raise ValueError("num_colors must be at least 1")
        bad = [c for c in colors if not 1 <= c <= self.num_colors]
        if bad:
            raise ValueError(f"colors outside 1..{self.num_colors}: {bad[:5]}")
        object.__setattr__(self, "colors", colors)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, position: int) -> int:
        """Color of integer ``position`` (1-based)."""
        if not 1 <= position <= len(self.colors):
            raise IndexError(position)
        return self.colors[position - 1]

    def is_canonical(self) -> bool:
        seen = 0
        for c in self.colors:
            if c > seen + 1:
                return False
            seen = max(seen, c)
        return True

    def canonical(self) -> Coloring:
        """Relabel colors in order of first appearance."""
        relabel: dict[int, int] = {}
        out = []
        for c in self.colors:
            if c not in relabel:
                relabel[c] = len(relabel) + 1
            out.append(relabel[c])
        return Coloring(self.num_colors, tuple(out))

    def reversed(self) -> Coloring:
        return Coloring(self.num_colors, self.colors[::-1])

    def __str__(self) -> str:
        return format_coloring(self)


@dataclass(frozen=True)
class SolutionTuple:
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if any(v < 1 for v in values):
            raise ValueError(f"solution entries must be >= 1, got {values}")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


class RegularityStatus(enum.Enum):
    REGULAR_POSITIVE_RATIO = "RegularPositiveRatio"
    REGULAR_NEGATIVE_RATIO_HOM_REGULAR = "RegularNegativeRatioHomRegular"
    NOT_REGULAR = "NotRegular"
    DEGENERATE_S = "DegenerateS"
    HOMOGENEOUS_REGULAR = "HomogeneousRegular"
    HOMOGENEOUS_NOT_REGULAR = "HomogeneousNotRegular"

    @property
    def is_regular(self) -> bool:
        return self in (
            RegularityStatus.REGULAR_POSITIVE_RATIO,
            RegularityStatus.REGULAR_NEGATIVE_RATIO_HOM_REGULAR,
            RegularityStatus.HOMOGENEOUS_REGULAR,
        )


def sum_s(eq: Equation) -> int:
    return eq.s


def is_solution(eq: Equation, tup: SolutionTuple | Sequence[int]) -> bool:
    values = tup.values if isinstance(tup, SolutionTuple) else tuple(tup)
    if len(values) != eq.k:
        raise ValueError(f"tuple has {len(values)} entries, equation has {eq.k} variables")
    left = sum(c * x for c, x in zip(eq.coeffs, values))
    return left == values[-1] + eq.shift


def enumerate_solutions_with_max(eq: Equation, p: int) -> list[SolutionTuple]:
    """All ordered solutions with entries in [1, p] whose largest entry is exactly p.

    Tuples come out in lexicographic order. Since x_k is determined by the
    other entries, only the k-1 left variables are enumerated; the last one
    is solved for directly rather than scanned.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    coeffs = eq.coeffs
    shift = eq.shift
    n_left = len(coeffs)
    # the left-hand sum must land in [lo, hi] so that x_k lies in [1, p]
    hi = p + shift
    lo = 1 + shift
    rest_min = [sum(coeffs[i:]) for i in range(n_left + 1)]
    out: list[SolutionTuple] = []
    xs = [0] * n_left
    c_last = coeffs[-1]

    def emit(x: int, partial: int) -> None:
        xs[-1] = x
        out.append(SolutionTuple((*xs, partial + c_last * x - shift)))

    def rec(i: int, partial: int, has_p: bool) -> None:
        if i == n_left - 1:
            x_lo = max(1, ceil_div(lo - partial, c_last))
            x_hi = min(p, (hi - partial) // c_last)
            if x_lo > x_hi:
                return
            if has_p:
                for x in range(x_lo, x_hi + 1):
                    emit(x, partial)
                return
            # no entry equals p yet: need x = p or x_k = p
            exact = hi - partial
            if exact % c_last == 0 and x_lo <= exact // c_last <= x_hi and exact // c_last != p:
                emit(exact // c_last, partial)
            if x_hi == p:
                emit(p, partial)
            return
        c = coeffs[i]
        span = p * rest_min[i + 1]
        for x in range(1, p + 1):
            total = partial + c * x
            if total + rest_min[i + 1] > hi:
                break
            if total + span < lo:
                continue
            xs[i] = x
            rec(i + 1, total, has_p or x == p)

    rec(0, 0, False)
    return out


def solution_constraints(eq: Equation, p: int) -> list[tuple[int, ...]]:
    """Distinct position sets below p that, together with p, form a solution.

    A coloring that gives p color c has a monochromatic solution with max
    entry p iff some returned set is entirely colored c. Permutations and
    repeated entries collapse into one set, and supersets of another set are
    dropped since they can never be the first witness of a conflict. An empty
    tuple means (p, ..., p) itself is a solution.
    """
    sets = {
        tuple(sorted({x for x in tup.values if x != p}))
        for tup in enumerate_solutions_with_max(eq, p)
    }
    return _minimal_sets(sets)


def _minimal_sets(sets: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    ordered = sorted(set(sets), key=lambda s: (len(s), s))
    kept: list[tuple[int, ...]] = []
    kept_sets: list[frozenset[int]] = []
    for s in ordered:
        fs = frozenset(s)
        if any(k <= fs for k in kept_sets):
            continue
        kept.append(s)
        kept_sets.append(fs)
    return sorted(kept)


def excellence_equations(coeffs: Sequence[int]) -> list[Equation]:
    """Equations c.x + j = x_k for j = 0..s, written in shift form."""
    base = Equation(tuple(coeffs), 0)
    return [Equation(base.coeffs, -j) for j in range(base.s + 1)]


def find_monochromatic(eq: Equation, col: Coloring) -> SolutionTuple | None:
    colors = col.colors
    for p in range(1, len(colors) + 1):
        c = colors[p - 1]
        for tup in enumerate_solutions_with_max(eq, p):
            if all(colors[x - 1] == c for x in tup.values):
                return tup
    return None


def is_good_coloring(eq: Equation, col: Coloring) -> bool:
    return find_monochromatic(eq, col) is None


def is_excellent_coloring(coeffs: Sequence[int], col: Coloring) -> bool:
    return all(is_good_coloring(eq, col) for eq in excellence_equations(coeffs))


def _has_zero_subset(values: Sequence[int]) -> bool:
    return any(
        sum(sub) == 0
        for r in range(1, len(values) + 1)
        for sub in itertools.combinations(values, r)
    )


def regularity_status(eq: Equation) -> RegularityStatus:
    if eq.shift == 0:
        signed = list(eq.coeffs) + [-1]
        if _has_zero_subset(signed):
            return RegularityStatus.HOMOGENEOUS_REGULAR
        return RegularityStatus.HOMOGENEOUS_NOT_REGULAR
    s = eq.s
    if s == 0:
        return RegularityStatus.DEGENERATE_S
    if eq.shift % s != 0:
        return RegularityStatus.NOT_REGULAR
    if eq.shift // s > 0:
        return RegularityStatus.REGULAR_POSITIVE_RATIO
    if regularity_status(eq.homogeneous()) is RegularityStatus.HOMOGENEOUS_REGULAR:
        return RegularityStatus.REGULAR_NEGATIVE_RATIO_HOM_REGULAR
    return RegularityStatus.NOT_REGULAR


# text formats

_EQ_RE = re.compile(r"^\s*coeffs=([0-9,\s]+?)\s+shift=([+-]?\d+)\s*$")


def parse_coeffs(text: str) -> tuple[int, ...]:
    try:
        coeffs = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"bad coefficient list: {text!r}") from None
    if not coeffs:
        raise ValueError("empty coefficient list")
    return coeffs


def parse_equation(text: str) -> Equation:
    m = _EQ_RE.match(text)
    if not m:
        raise ValueError(f"expected 'coeffs=1,1 shift=-1', got {text!r}")
    return Equation(parse_coeffs(m.group(1)), int(m.group(2)))


def format_equation(eq: Equation) -> str:
    return f"coeffs={','.join(map(str, eq.coeffs))} shift={eq.shift}"


def parse_coloring(text: str, num_colors: int | None = None) -> Coloring:
    try:
        colors = tuple(int(tok) for tok in text.split())
    except ValueError:
        raise ValueError(f"bad coloring text: {text!r}") from None
    if num_colors is None:
        num_colors = max(colors, default=1)
    return Coloring(num_colors, colors)


def format_coloring(col: Coloring) -> str:
    return " ".join(map(str, col.colors))
