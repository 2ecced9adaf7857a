"""Godel codes of full square patterns."""
import itertools
from typing import Iterator, NamedTuple

from univshift.types import partial_pattern, square_coords


class pattern_code(NamedTuple):
    """Code of a full square pattern over s letters in dimension d."""

    size: int
    dimension: int
    code: int


def _block(size: int, dimension: int, radius: int) -> int:
    return size ** ((2 * radius + 1) ** dimension)


def encode_pattern(p: partial_pattern) -> pattern_code:
    """Code of a full pattern on [-r;r]^d.

    Patterns of radius r come after all patterns of smaller radius; inside
    the block the letters read in lexicographic coordinate order form a
    base-s number, first cell most significant.

    Args:
        p (partial_pattern): full square pattern

    Returns:
        pattern_code: code

    Raises:
        Exception: If p is not full on a centered square
    """
    r = p.square_radius()
    if r < 0:
        raise Exception(f"{p} is not a full pattern on a centered square")
    s, d = p.size, p.dimension
    code = sum(_block(s, d, q) for q in range(r))
    cells = p.as_dict()
    value = 0
    for coord in square_coords(r, d):
        value = value * s + cells[coord]
    return pattern_code(s, d, code + value)


def decode_pattern(code: int, size: int, dimension: int) -> partial_pattern:
    """Full square pattern with a given code.

    Args:
        code (int): pattern code
        size (int): Alphabet size s
        dimension (int): Dimension d

    Returns:
        partial_pattern: pattern on [-r;r]^d
    """
    assert code >= 0 and size >= 1 and dimension >= 1, "bad code or header"
    r = 0
    block = _block(size, dimension, 0)
    while code >= block:
        code -= block
        r += 1
        block = _block(size, dimension, r)
    cells = (2 * r + 1) ** dimension
    letters = []
    for _ in range(cells):
        code, digit = divmod(code, size)
        letters.append(digit)
    letters.reverse()
    return partial_pattern.square(letters, r, size, dimension)


def square_completions(p: partial_pattern) -> Iterator[partial_pattern]:
    """Full square patterns each containing an occurrence of p.

    Uses the smallest centered square the pattern fits in, every placement
    of the pattern inside it and every filling of the wildcard cells. A
    configuration contains p iff it contains one of these.

    Args:
        p (partial_pattern): pattern

    Yields:
        partial_pattern: completions, placement by placement
    """
    norm = p.normalized()
    shape = norm.shape()
    r = max(shape) // 2
    side = 2 * r + 1
    d = p.dimension
    offsets = itertools.product(*[range(-r, -r + side - span + 1) for span in shape])
    squares = list(square_coords(r, d))
    for offset in offsets:
        pinned = norm.translated(offset).as_dict()
        free = [c for c in squares if c not in pinned]
        for fill in itertools.product(range(p.size), repeat=len(free)):
            cells = dict(pinned)
            cells.update(zip(free, fill))
            yield partial_pattern(cells, p.size, d)
