"""Line-oriented text serialization for automata.

Format (UTF-8, ``#`` starts a comment anywhere on a line):

    states <n>
    alphabet <name1> <name2> ...
    initial <i1> <i2> ...
    final <f1> <f2> ...
    trans <src> <letter-name> <dst>

``states`` and ``alphabet`` are required and must precede every ``trans``
line; ``initial``/``final`` may be empty or omitted.  ``emit_nfa`` writes
the canonical form (directives in the order above, transitions in sorted
order), so emit(parse(emit(x))) is byte-identical to emit(x).
"""

from __future__ import annotations

from .errors import FormatError
from .nfa import Nfa


def _int_token(token: str, line_no: int, column: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", line_no, column)


def parse_nfa(text: str) -> Nfa:
    n_states: int | None = None
    alphabet: tuple[str, ...] | None = None
    letter_index: dict[str, int] = {}
    initial: list[int] = []
    final: list[int] = []
    seen: dict[str, int] = {}
    triples: list[tuple[int, int, int]] = []
    triple_set: set[tuple[int, int, int]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        col = raw.index(directive) + 1

        if directive in ("states", "alphabet", "initial", "final"):
            if directive in seen:
                raise FormatError(
                    f"duplicate {directive!r} line (first on line {seen[directive]})",
                    line_no,
                    col,
                )
            seen[directive] = line_no

        if directive == "states":
            if len(args) != 1:
                raise FormatError("states takes exactly one count", line_no, col)
            n_states = _int_token(args[0], line_no, col, "state count")
            if n_states < 1:
                raise FormatError("state count must be at least 1", line_no, col)
        elif directive == "alphabet":
            if not args:
                raise FormatError("alphabet must list at least one letter", line_no, col)
            for name in args:
                if name in letter_index:
                    raise FormatError(f"duplicate letter {name!r}", line_no, col)
                letter_index[name] = len(letter_index)
            alphabet = tuple(args)
        elif directive in ("initial", "final"):
            if n_states is None:
                raise FormatError(f"{directive} before states line", line_no, col)
            bucket = initial if directive == "initial" else final
            for token in args:
                s = _int_token(token, line_no, col, "state index")
                if not 0 <= s < n_states:
                    raise FormatError(f"state index {s} out of range", line_no, col)
                bucket.append(s)
        elif directive == "trans":
            if n_states is None or alphabet is None:
                raise FormatError("trans before states/alphabet lines", line_no, col)
            if len(args) != 3:
                raise FormatError("trans takes <src> <letter-name> <dst>", line_no, col)
            src = _int_token(args[0], line_no, col, "source state")
            dst = _int_token(args[2], line_no, col, "target state")
            if not 0 <= src < n_states:
                raise FormatError(f"source state {src} out of range", line_no, col)
            if not 0 <= dst < n_states:
                raise FormatError(f"target state {dst} out of range", line_no, col)
            if args[1] not in letter_index:
                raise FormatError(f"unknown letter {args[1]!r}", line_no, col)
            triple = (src, letter_index[args[1]], dst)
            if triple in triple_set:
                raise FormatError(
                    f"duplicate transition {args[0]} {args[1]} {args[2]}", line_no, col
                )
            triple_set.add(triple)
            triples.append(triple)
        else:
            raise FormatError(f"unknown directive {directive!r}", line_no, col)

    if n_states is None:
        raise FormatError("missing states line")
    if alphabet is None:
        raise FormatError("missing alphabet line")
    return Nfa(
        n_states=n_states,
        alphabet=alphabet,
        initial=frozenset(initial),
        final=frozenset(final),
        transitions=tuple(triples),
    )


def emit_nfa(nfa: Nfa, state_labels: dict[int, str] | None = None) -> str:
    """Canonical text for an automaton.

    ``state_labels`` adds informational comment lines (one per labeled
    state) after the header; parsers ignore them, so labeled output parses
    back to the same automaton.
    """
    lines = [f"states {nfa.n_states}"]
    if state_labels:
        for s in sorted(state_labels):
            lines.append(f"# state {s} = {state_labels[s]}")
    lines.append("alphabet " + " ".join(nfa.alphabet))
    lines.append(("initial " + " ".join(str(s) for s in sorted(nfa.initial))).rstrip())
    lines.append(("final " + " ".join(str(s) for s in sorted(nfa.final))).rstrip())
    for src, letter, dst in nfa.transitions:
        lines.append(f"trans {src} {nfa.alphabet[letter]} {dst}")
    return "\n".join(lines) + "\n"
