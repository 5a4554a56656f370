"""Symbolic coefficients of the perturbed planar resolvent.

Expanding the resolvent of -4 d_w d_wb + m^2 - f in powers of the free
resolvent produces multiplication-operator coefficients B[i,j,l] built
from a single scalar potential f and its mixed derivatives.  They obey

    B[0,0,0] = 1,    B = 0 whenever any index is negative,
    B[i,j,l] = 4 d_w d_wb B[i,j,l-2] + 2 d_w B[i,j-1,l-1]
               + 2 d_wb B[i-1,j,l-1] + f * B[i,j,l-2],

where d_w and d_wb differentiate with respect to the holomorphic and
antiholomorphic coordinates.  Every coefficient is a polynomial in the
derivatives of f with integer coefficients; this module computes them
exactly and never introduces floating point.

The generators commute (f and its derivatives are scalar functions), so
a monomial is a multiset of generators, stored as a sorted tuple.  A
single re-entrant lock guards the memo table; results are immutable
once inserted.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .errors import DomainError

OMEGA = "omega"
OMEGA_BAR = "omega_bar"


@dataclass(frozen=True, order=True)
class DerivGenerator:
    """The mixed derivative d_w^a d_wb^b f of the potential.

    ``(0, 0)`` is f itself.  Generators commute under multiplication.
    """

    omega_count: int = 0
    omega_bar_count: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.omega_count, int) or isinstance(
            self.omega_count, bool
        ):
            raise DomainError("omega_count must be an integer")
        if not isinstance(self.omega_bar_count, int) or isinstance(
            self.omega_bar_count, bool
        ):
            raise DomainError("omega_bar_count must be an integer")
        if self.omega_count < 0 or self.omega_bar_count < 0:
            raise DomainError("derivative counts must be non-negative")

    def raised(self, direction: str) -> "DerivGenerator":
        """One more derivative in the given direction."""
        if direction == OMEGA:
            return DerivGenerator(self.omega_count + 1, self.omega_bar_count)
        if direction == OMEGA_BAR:
            return DerivGenerator(self.omega_count, self.omega_bar_count + 1)
        raise DomainError(f"unknown direction {direction!r}")

    def swapped(self) -> "DerivGenerator":
        """Complex conjugate: (a, b) -> (b, a), f itself being real."""
        return DerivGenerator(self.omega_bar_count, self.omega_count)

    def text(self) -> str:
        if self.omega_count == 0 and self.omega_bar_count == 0:
            return "f"
        return f"f({self.omega_count},{self.omega_bar_count})"


Monomial = Tuple[DerivGenerator, ...]


def monomial_weight(monomial: Monomial) -> int:
    """Grading weight: total derivative count plus two per f factor."""
    return sum(g.omega_count + g.omega_bar_count for g in monomial) + 2 * len(
        monomial
    )


class SymbolicPolynomial:
    """Integer-coefficient polynomial in the derivative generators.

    Terms map a canonical (sorted) multiset of generators to a nonzero
    integer coefficient.  Zero coefficients are never stored, equality
    is structural, and instances are immutable.
    """

    __slots__ = ("_terms",)

    def __init__(
        self, terms: Optional[Mapping[Monomial, int]] = None
    ) -> None:
        merged: Dict[Monomial, int] = {}
        for monomial, coeff in (terms or {}).items():
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise DomainError("coefficients must be integers")
            for generator in monomial:
                if not isinstance(generator, DerivGenerator):
                    raise DomainError(
                        "monomials must contain DerivGenerator entries"
                    )
            key = tuple(sorted(monomial))
            merged[key] = merged.get(key, 0) + coeff
        object.__setattr__(
            self,
            "_terms",
            {k: v for k, v in sorted(merged.items()) if v != 0},
        )

    @classmethod
    def zero(cls) -> "SymbolicPolynomial":
        return cls()

    @classmethod
    def unit(cls) -> "SymbolicPolynomial":
        return cls({(): 1})

    @classmethod
    def generator(cls, gen: DerivGenerator) -> "SymbolicPolynomial":
        return cls({(gen,): 1})

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self._terms.items())

    def coefficient(self, monomial: Monomial) -> int:
        return self._terms.get(tuple(sorted(monomial)), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolicPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "SymbolicPolynomial") -> "SymbolicPolynomial":
        if not isinstance(other, SymbolicPolynomial):
            return NotImplemented
        merged = dict(self._terms)
        for monomial, coeff in other._terms.items():
            merged[monomial] = merged.get(monomial, 0) + coeff
        return SymbolicPolynomial(merged)

    def scaled(self, factor: int) -> "SymbolicPolynomial":
        if not isinstance(factor, int) or isinstance(factor, bool):
            raise DomainError("scale factor must be an integer")
        return SymbolicPolynomial(
            {m: factor * c for m, c in self._terms.items()}
        )

    def times_generator(self, gen: DerivGenerator) -> "SymbolicPolynomial":
        """Multiply every monomial by one more generator factor."""
        return SymbolicPolynomial(
            {tuple(sorted(m + (gen,))): c for m, c in self._terms.items()}
        )

    def __repr__(self) -> str:
        return f"SymbolicPolynomial<{polynomial_text(self)}>"


def derive(
    poly: SymbolicPolynomial, direction: str
) -> SymbolicPolynomial:
    """Differentiate in the given direction by the Leibniz rule.

    Each monomial contributes one term per distinct generator, with the
    generator's multiplicity as an integer factor and one derivative
    index raised.
    """
    if direction not in (OMEGA, OMEGA_BAR):
        raise DomainError(f"unknown direction {direction!r}")
    out: Dict[Monomial, int] = {}
    for monomial, coeff in poly.items():
        seen = set()
        for position, gen in enumerate(monomial):
            if gen in seen:
                continue
            seen.add(gen)
            multiplicity = monomial.count(gen)
            raised = list(monomial)
            raised[position] = gen.raised(direction)
            key = tuple(sorted(raised))
            out[key] = out.get(key, 0) + coeff * multiplicity
    return SymbolicPolynomial(out)


def conjugate(poly: SymbolicPolynomial) -> SymbolicPolynomial:
    """Complex conjugation: swap (a, b) -> (b, a) in every generator."""
    return SymbolicPolynomial(
        {
            tuple(sorted(g.swapped() for g in monomial)): coeff
            for monomial, coeff in poly.items()
        }
    )


@dataclass(frozen=True)
class CoeffIndex:
    """Index triple of a resolvent coefficient B[i,j,l].

    Negative components are legal and index the zero polynomial.  The
    recurrence itself forces B to vanish unless i, j, l >= 0, i+j+l is
    even and i+j <= l; those facts are discovered by computation, not
    assumed.
    """

    i: int
    j: int
    l: int

    def __post_init__(self) -> None:
        for value in (self.i, self.j, self.l):
            if not isinstance(value, int) or isinstance(value, bool):
                raise DomainError("coefficient indices must be integers")


_MEMO: Dict[Tuple[int, int, int], SymbolicPolynomial] = {}
_MEMO_LOCK = threading.RLock()


def _reset_memo() -> None:
    # Test hook: forces a genuinely fresh recomputation.
    with _MEMO_LOCK:
        _MEMO.clear()


def _b(i: int, j: int, l: int) -> SymbolicPolynomial:
    # Caller holds _MEMO_LOCK (re-entrant, so recursion is fine).
    if i < 0 or j < 0 or l < 0:
        return SymbolicPolynomial.zero()
    key = (i, j, l)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    if key == (0, 0, 0):
        value = SymbolicPolynomial.unit()
    else:
        value = (
            derive(derive(_b(i, j, l - 2), OMEGA), OMEGA_BAR).scaled(4)
            + derive(_b(i, j - 1, l - 1), OMEGA).scaled(2)
            + derive(_b(i - 1, j, l - 1), OMEGA_BAR).scaled(2)
            + _b(i, j, l - 2).times_generator(DerivGenerator())
        )
    _MEMO[key] = value
    return value


def compute_b(idx: CoeffIndex) -> SymbolicPolynomial:
    """Exact symbolic coefficient B[i,j,l] from the recurrence.

    Results are memoized; repeated calls return the identical immutable
    polynomial.  Indices with a negative component yield the zero
    polynomial, as do all combinations the recurrence annihilates
    (odd i+j+l, or i+j exceeding l).

    Parameters
    ----------
    idx:
        The coefficient index.

    Returns
    -------
    SymbolicPolynomial
        Polynomial in f and its derivatives with integer coefficients.
    """
    with _MEMO_LOCK:
        return _b(idx.i, idx.j, idx.l)


def monomial_weights(poly: SymbolicPolynomial) -> Tuple[int, ...]:
    """Sorted distinct grading weights across the polynomial's terms.

    The recurrence adds weight two per step in l, so every nonzero
    B[i,j,l] is homogeneous with weight exactly l; callers assert
    ``monomial_weights(b) in ((), (l,))``.
    """
    return tuple(sorted({monomial_weight(m) for m, _ in poly.items()}))


def _monomial_text(monomial: Monomial) -> str:
    parts: List[str] = []
    position = 0
    while position < len(monomial):
        gen = monomial[position]
        run = 1
        while (
            position + run < len(monomial)
            and monomial[position + run] == gen
        ):
            run += 1
        parts.append(gen.text() if run == 1 else f"{gen.text()}^{run}")
        position += run
    return "*".join(parts)


def polynomial_text(poly: SymbolicPolynomial) -> str:
    """Canonical text form, e.g. ``f^2 + 4*f(1,1)``."""
    if not poly:
        return "0"
    rendered: List[str] = []
    for monomial, coeff in poly.items():
        magnitude = abs(coeff)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = _monomial_text(monomial)
        else:
            body = f"{magnitude}*{_monomial_text(monomial)}"
        if not rendered:
            rendered.append(body if coeff > 0 else f"-{body}")
        else:
            rendered.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(rendered)


def format_coefficient(idx: CoeffIndex) -> str:
    """One canonical listing line, e.g. ``B[1,0,3] = 2*f(0,1)``."""
    return f"B[{idx.i},{idx.j},{idx.l}] = {polynomial_text(compute_b(idx))}"


def json_terms(poly: SymbolicPolynomial) -> List[dict]:
    """Term map as JSON-serializable data, in canonical order."""
    return [
        {
            "generators": [
                [g.omega_count, g.omega_bar_count] for g in monomial
            ],
            "coefficient": coeff,
        }
        for monomial, coeff in poly.items()
    ]


def nonzero_coefficients(
    l_max: int,
) -> List[Tuple[CoeffIndex, SymbolicPolynomial]]:
    """All nonzero B[i,j,l] with l <= l_max, ordered by (l, i, j).

    The (i, j) range is swept out to l in each slot; the recurrence
    itself annihilates everything beyond i+j <= l, so the sweep is
    exhaustive for the returned l values.
    """
    if not isinstance(l_max, int) or isinstance(l_max, bool) or l_max < 0:
        raise DomainError("l_max must be a non-negative integer")
    listing: List[Tuple[CoeffIndex, SymbolicPolynomial]] = []
    for l in range(l_max + 1):
        for i in range(l + 1):
            for j in range(l + 1):
                idx = CoeffIndex(i, j, l)
                value = compute_b(idx)
                if value:
                    listing.append((idx, value))
    return listing


def reality_report(
    i_max: int = 3, j_max: int = 3, l_max: int = 6
) -> List[Tuple[CoeffIndex, SymbolicPolynomial, SymbolicPolynomial]]:
    """Indices violating conj(B[i,j,l]) == B[j,i,l], with both sides.

    The constraint keeps the resolvent real; it is verified rather than
    imposed, and any violation is reported, never silently patched.  An
    empty list means the constraint holds on the swept range.
    """
    findings: List[
        Tuple[CoeffIndex, SymbolicPolynomial, SymbolicPolynomial]
    ] = []
    for l in range(l_max + 1):
        for i in range(i_max + 1):
            for j in range(j_max + 1):
                idx = CoeffIndex(i, j, l)
                mirrored = conjugate(compute_b(idx))
                direct = compute_b(CoeffIndex(j, i, l))
                if mirrored != direct:
                    findings.append((idx, mirrored, direct))
    return findings
