"""Known homogeneous Rado numbers, closed-form corollaries, and the conjecture harness."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .bounds import PreconditionError, lower_bound_neg, upper_bound_neg, upper_bound_pos
from .equation import Coloring, Equation, ceil_div, regularity_status
from .search import SearchStatus, max_excellent_length
from .store import CertificateStore, cached_rado_number


class Source(enum.Enum):
    CITED = "Cited"
    DERIVED_BY_SEARCH = "DerivedBySearch"
    DERIVED_BY_ALGEBRA = "DerivedByAlgebra"


@dataclass(frozen=True)
class KnownValue:
    coeffs: tuple[int, ...]
    num_colors: int
    value: int
    source: Source
    citation: str = ""
    witness: Coloring | None = None

    def __post_init__(self):
        if self.source is Source.CITED and not self.citation:
            raise ValueError("cited values need a citation")
        if self.source is Source.DERIVED_BY_SEARCH and self.witness is None:
            raise ValueError("search-derived values need a witness certificate")


_SCHUR = "Schur numbers: s(2)=5, s(3)=14, s(4)=45 (Baumert 1965), s(5)=161 (Heule 2017)"

_TABLE: dict[tuple[tuple[int, ...], int], KnownValue] = {}


def _add(coeffs, t, value, source, citation):
    _TABLE[(tuple(coeffs), t)] = KnownValue(tuple(coeffs), t, value, source, citation)


for _t, _v in [(2, 5), (3, 14), (4, 45), (5, 161)]:
    _add((1, 1), _t, _v, Source.CITED, _SCHUR)
# The 3-color closed forms (R-1)m + R for x_1+...+x_{k-1} = x_k - (k-2)m pin down R.
for _coeffs, _slope in [((1, 1, 1), 42), ((1, 1, 1, 1), 93), ((1, 1, 1, 1, 1), 172)]:
    _add(_coeffs, 3, _slope + 1, Source.DERIVED_BY_ALGEBRA,
         f"solved from the closed form {_slope}m+{_slope + 1} for shift -{len(_coeffs) - 1}m")


def known_R(coeffs: Sequence[int], t: int, store: CertificateStore | None = None) -> KnownValue | None:
    """Registry lookup for the t-color Rado number of c.x = x_k. Never guesses."""
    coeffs = tuple(coeffs)
    hit = _TABLE.get((coeffs, t))
    if hit is not None:
        return hit
    if t == 2 and all(c == 1 for c in coeffs):
        k = len(coeffs) + 1
        return KnownValue(coeffs, 2, k * k - k - 1, Source.CITED,
                          "Landman & Robertson, Ramsey Theory on the Integers, Thm 8.23: k^2-k-1")
    if store is not None:
        cert = store.find_exact("good", coeffs, t, shift=0)
        if cert is not None:
            return KnownValue(coeffs, t, cert.length + 1, Source.DERIVED_BY_SEARCH,
                              f"certificate {cert.key}", cert.coloring)
    return None


def registry_entries() -> list[KnownValue]:
    return list(_TABLE.values())


# Closed forms. Keys name the equation family rather than any numbering.

def all_ones_neg(k: int, m: int) -> int:
    """2-color r for x_1+...+x_{k-1} = x_k - (k-2)m."""
    _require(k >= 3 and m >= 1, "need k >= 3 and m >= 1")
    return (m + 1) * (k * k - k - 2) + 1


_THREE_COLOR_NEG = {2: (13, 14), 3: (42, 43), 4: (93, 94), 5: (172, 173)}


def three_color_neg(num_left: int, m: int) -> int:
    """3-color r for x_1+...+x_{num_left} = x_k - (num_left-1)m."""
    _require(num_left in _THREE_COLOR_NEG and m >= 1, "need 2 <= num_left <= 5 and m >= 1")
    a, c = _THREE_COLOR_NEG[num_left]
    return a * m + c


def all_ones_pos(k: int, m: int) -> int:
    """2-color r for x_1+...+x_{k-1} = x_k + (k-2)m."""
    _require(k >= 3 and m >= 1, "need k >= 3 and m >= 1")
    return m - ceil_div(m, k * k - k - 1) + 1


def schur_pos_3(b: int) -> int:
    """3-color r for x + y = z + b."""
    _require(b >= 1, "need b >= 1")
    return b - ceil_div(b, 14) + 1


def schur_pos_3_lr_claim(b: int) -> int:
    """The earlier published (incorrect) closed form for 3-color x + y = z + b."""
    _require(b >= 1, "need b >= 1")
    return b - ceil_div(b - 1, 14)


def _require(ok: bool, msg: str) -> None:
    if not ok:
        raise PreconditionError(msg)


COROLLARIES = {
    "all_ones_neg": all_ones_neg,
    "three_color_neg": three_color_neg,
    "all_ones_pos": all_ones_pos,
    "schur_pos_3": schur_pos_3,
}


def corollary_value(which: str, **params: int) -> int:
    """Evaluate a named closed form.

    ``all_ones_neg``/``all_ones_pos`` accept ``k`` with either ``m`` or the
    shift magnitude ``b`` (which must be a multiple of k-2);
    ``three_color_neg`` takes ``num_left`` and ``m``; ``schur_pos_3`` takes ``b``.
    """
    if which not in COROLLARIES:
        raise KeyError(f"unknown closed form {which!r}; choose from {sorted(COROLLARIES)}")
    if which in ("all_ones_neg", "all_ones_pos") and "b" in params:
        k, b = params["k"], params.pop("b")
        _require(k >= 3, "need k >= 3")
        _require(b % (k - 2) == 0, f"k-2 = {k - 2} does not divide b = {b}")
        params["m"] = b // (k - 2)
    return COROLLARIES[which](**params)


def conjecture_value(coeffs: Sequence[int], shift: int, R: int) -> int:
    s = sum(coeffs) - 1
    _require(shift != 0, "the conjectured formula covers non-zero shifts only")
    _require(s >= 1, "need s >= 1")
    _require(shift % s == 0, f"s = {s} does not divide shift {shift}")
    if shift > 0:
        return shift // s - ceil_div(shift // s, R) + 1
    return (-shift // s) * (R - 1) + R


@dataclass
class ConjectureRow:
    shift: int
    R: int | None
    R_source: str
    conjectured: int | None
    searched: int | None
    search_status: str
    verdict: str  # agree | disagree | inconclusive
    elapsed: float = 0.0


@dataclass
class ConjectureReport:
    coeffs: tuple[int, ...]
    num_colors: int
    cap: int
    rows: list[ConjectureRow] = field(default_factory=list)
    excellent_length: int | None = None
    excellent_status: str = ""
    excellence_matches: bool | None = None

    @property
    def verdict(self) -> str:
        verdicts = {r.verdict for r in self.rows}
        if "disagree" in verdicts:
            return "disagree"
        if "inconclusive" in verdicts or not self.rows:
            return "inconclusive"
        return "agree"


def homogeneous_R(coeffs, t, cap, *, store=None, force=False, threads=1, budget=None) -> tuple[int | None, str]:
    """R from the registry, else from (cached) search; None when search is inconclusive."""
    hit = known_R(coeffs, t, None if force else store)
    if hit is not None:
        return hit.value, hit.source.value
    res = cached_rado_number(Equation(tuple(coeffs), 0), t, cap, store, force=force,
                             threads=threads, budget=budget)
    if res.status is SearchStatus.EXACT:
        return res.value, res.method
    return None, f"search {res.status.value}({res.value})"


def conjecture_check(
    coeffs: Sequence[int],
    t: int,
    shifts: Sequence[int],
    cap: int,
    *,
    store: CertificateStore | None = None,
    force: bool = False,
    threads: int = 1,
    budget: float | None = None,
) -> ConjectureReport:
    """Compare the conjectured closed form with exact search for each shift."""
    coeffs = tuple(coeffs)
    s = sum(coeffs) - 1
    for b in shifts:
        _require(s >= 1 and b != 0 and b % s == 0, f"shift {b} must be a non-zero multiple of s = {s}")
    report = ConjectureReport(coeffs, t, cap)
    R, R_source = homogeneous_R(coeffs, t, cap, store=store, force=force, threads=threads, budget=budget)
    if R is not None:
        exc = max_excellent_length(coeffs, t, R, threads=threads, budget=budget)
        report.excellent_status = exc.status.value
        if exc.status is SearchStatus.EXACT:
            report.excellent_length = exc.value
            report.excellence_matches = exc.value == R - 1
    for b in shifts:
        conj = conjecture_value(coeffs, b, R) if R is not None else None
        res = cached_rado_number(Equation(coeffs, b), t, cap, store, force=force,
                                 threads=threads, budget=budget)
        searched = res.value if res.status is SearchStatus.EXACT else None
        if conj is None or searched is None:
            verdict = "inconclusive"
        else:
            verdict = "agree" if conj == searched else "disagree"
        report.rows.append(ConjectureRow(b, R, R_source, conj, searched,
                                         f"{res.status.value}({res.value})", verdict, res.elapsed))
    return report


def all_ones_identities(k: int, m: int) -> bool:
    """The all-ones closed forms agree with the general bounds at n = R-1."""
    coeffs = (1,) * (k - 1)
    b = (k - 2) * m
    R = k * k - k - 1
    neg = all_ones_neg(k, m) == lower_bound_neg(coeffs, b, R - 1) == upper_bound_neg(coeffs, b, R)
    pos = all_ones_pos(k, m) == upper_bound_pos(coeffs, b, R)
    return neg and pos


def is_t_regular_candidate(coeffs: Sequence[int]) -> bool:
    """Homogeneous c.x = x_k is regular (so t-regular for every t)."""
    return regularity_status(Equation(tuple(coeffs), 0)).is_regular
