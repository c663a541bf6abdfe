"""Text forms of partial matchings.

Arc list, one object per line::

    12 | 1-5 2-9 3-7

Bracket (dot-bracket) strings put each arc on a "page" of mutually
noncrossing arcs, one bracket pair per page::

    ([)]..
"""

from __future__ import annotations

from .errors import ParseError
from .tableau import PartialMatching

PAGES = ("()", "[]", "{}", "<>")


def format_arcs(m: PartialMatching) -> str:
    key = m.key()
    return f"{m.n} | {key}" if key else f"{m.n} |"


def parse_arcs(line: str) -> PartialMatching:
    head, sep, tail = line.partition("|")
    if not sep:
        raise ParseError(f"missing '|' in {line!r}")
    try:
        n = int(head)
        arcs = []
        for tok in tail.split():
            i, j = tok.split("-")
            arcs.append((int(i), int(j)))
        return PartialMatching(n, tuple(arcs))
    except ValueError as exc:
        raise ParseError(f"bad arc list {line!r}: {exc}") from None


def _crosses(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (i, j), (p, q) = sorted((a, b))
    return i < p < j < q


def assign_pages(m: PartialMatching) -> list[int] | None:
    """Greedy page of each arc (in arc order), or None if more than 4 pages are needed."""
    pages: list[list[tuple[int, int]]] = []
    out = []
    for arc in m.arcs:
        for p, held in enumerate(pages):
            if not any(_crosses(arc, other) for other in held):
                held.append(arc)
                out.append(p)
                break
        else:
            if len(pages) == len(PAGES):
                return None
            pages.append([arc])
            out.append(len(pages) - 1)
    return out


def format_brackets(m: PartialMatching) -> str | None:
    pages = assign_pages(m)
    if pages is None:
        return None
    chars = ["."] * m.n
    for (i, j), p in zip(m.arcs, pages):
        chars[i - 1] = PAGES[p][0]
        chars[j - 1] = PAGES[p][1]
    return "".join(chars)


def parse_brackets(text: str) -> PartialMatching:
    opener = {pair[0]: p for p, pair in enumerate(PAGES)}
    closer = {pair[1]: p for p, pair in enumerate(PAGES)}
    stacks: list[list[int]] = [[] for _ in PAGES]
    arcs = []
    for pos, ch in enumerate(text.strip(), 1):
        if ch == ".":
            continue
        if ch in opener:
            stacks[opener[ch]].append(pos)
        elif ch in closer:
            stack = stacks[closer[ch]]
            if not stack:
                raise ParseError(f"unmatched {ch!r} at {pos}")
            arcs.append((stack.pop(), pos))
        else:
            raise ParseError(f"unexpected character {ch!r} at {pos}")
    if any(stacks):
        raise ParseError("unclosed bracket")
    return PartialMatching(len(text.strip()), tuple(arcs))
