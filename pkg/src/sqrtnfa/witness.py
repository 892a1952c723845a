"""Hard instance family for the square-root operation.

For n >= 6 this builds an n-state NFA over the structured alphabet
{a[p,q,r], b[p,q,r] : 0 <= p,q,r < n} whose square-root language cannot be
recognized by any NFA with fewer than n^3 states.  Initial states are
{0,1,2} and final states {3,4,5}; the transitions of each letter are
steered by two pivot maps that send any state into the initial block
(``pivot_l``) or the final block (``pivot_m``) while avoiding fixed points
and 2-cycles.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import FormatError
from .nfa import Nfa

INITIAL_BLOCK = frozenset({0, 1, 2})
FINAL_BLOCK = frozenset({3, 4, 5})

MIN_STATES = 6
DEFAULT_MAX_STATES = 32  # 2*n^3 letters; 32 keeps the alphabet under 66k names


class WitnessLetter(NamedTuple):
    kind: str  # "a" or "b"
    p: int
    q: int
    r: int

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


def pivot_l(p: int) -> int:
    """Redirect into the initial block: 0 -> 1, 1 -> 2, everything else -> 0.

    Never a fixed point, and p = pivot_l(p') together with p' = pivot_l(p)
    is unsatisfiable; the lower-bound contradiction leans on both facts.
    """
    if p < 0:
        raise ValueError("state must be non-negative")
    if p == 0:
        return 1
    if p == 1:
        return 2
    return 0


def pivot_m(p: int) -> int:
    """Redirect into the final block: 3 -> 4, 4 -> 5, everything else -> 3."""
    if p < 0:
        raise ValueError("state must be non-negative")
    if p == 3:
        return 4
    if p == 4:
        return 5
    return 3


def letter_name(kind: str, triple: tuple[int, int, int]) -> str:
    if kind not in ("a", "b"):
        raise ValueError(f"letter kind must be 'a' or 'b', got {kind!r}")
    p, q, r = triple
    if min(p, q, r) < 0:
        raise ValueError(f"letter payload {triple} has a negative index")
    return f"{kind}[{p},{q},{r}]"


_LETTER_RE = re.compile(r"^([ab])\[(\d+),(\d+),(\d+)\]$")


def parse_letter(name: str, n: int | None = None) -> WitnessLetter:
    """Parse a canonical witness letter name back to (kind, p, q, r).

    With ``n`` given, payload indices are range-checked against it.
    """
    m = _LETTER_RE.match(name)
    if not m:
        for pos, ch in enumerate(name):
            if ch not in "ab[],0123456789":
                raise FormatError(f"bad character {ch!r} in letter name", column=pos + 1)
        raise FormatError(f"malformed letter name {name!r}", column=1)
    kind = m.group(1)
    p, q, r = (int(m.group(i)) for i in (2, 3, 4))
    if n is not None and max(p, q, r) >= n:
        raise FormatError(
            f"letter payload out of range for {n} states: {name!r}",
            column=m.start(2) + 1,
        )
    return WitnessLetter(kind, p, q, r)


def witness_alphabet(n: int) -> tuple[str, ...]:
    """Canonical alphabet order: all a-letters by lexicographic payload,
    then all b-letters.  The flat payload index of (p,q,r) is p*n^2+q*n+r,
    so letter indices are reproducible across runs and languages."""
    names = []
    for kind in ("a", "b"):
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    names.append(letter_name(kind, (p, q, r)))
    return tuple(names)


def witness(n: int, max_n: int = DEFAULT_MAX_STATES) -> Nfa:
    """The n-state automaton whose square root needs n^3 NFA states.

    Per payload X = (p,q,r): letter a[X] carries exactly the transitions
    pivot_l(p) -> q and p -> r; letter b[X] carries exactly q -> p and
    r -> pivot_m(p).  All other entries of the transition relation are
    empty on purpose: runs must die outside the two listed sources.

    Raises ValueError for n < 6 (the construction needs disjoint 3-state
    initial and final blocks) and BudgetExceededError-style refusal via
    ``max_n`` for alphabets that would not fit in memory.
    """
    if n < MIN_STATES:
        raise ValueError(
            f"witness family needs n >= {MIN_STATES} "
            f"(disjoint initial block {{0,1,2}} and final block {{3,4,5}}), got {n}"
        )
    if n > max_n:
        raise ValueError(
            f"witness({n}) would have {2 * n**3} letters; "
            f"pass max_n >= {n} to generate it anyway"
        )
    cube = n * n * n
    triples = []
    for p in range(n):
        lp = pivot_l(p)
        mp = pivot_m(p)
        for q in range(n):
            for r in range(n):
                flat = (p * n + q) * n + r
                triples.append((lp, flat, q))
                triples.append((p, flat, r))
                triples.append((q, cube + flat, p))
                triples.append((r, cube + flat, mp))
    return Nfa(
        n_states=n,
        alphabet=witness_alphabet(n),
        initial=INITIAL_BLOCK,
        final=FINAL_BLOCK,
        transitions=tuple(triples),
    )
