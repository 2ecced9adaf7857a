"""Transport of forbidden patterns onto one layer of the skeleton."""
import logging
from typing import Dict, Iterator

from univshift.errors import AlphabetTooLarge
from univshift.layers.skeleton import C0, SIGMA, skeleton
from univshift.symbolic.subshift import pattern_stream, subshift
from univshift.types import partial_pattern

log = logging.getLogger(__name__)


def letter_pattern(
    params: skeleton, n: int, cells: Dict[int, int]
) -> partial_pattern:
    """Skeleton pattern pinning layer n meta coding cells to letters.

    The phase anchors of layers 1..n are pinned with the first n real
    coding cells of each meta coding cell, which hold the letter bits
    most significant first.

    Args:
        params (skeleton): skeleton parameters
        n (int): layer
        cells (Dict[int, int]): meta coding cell offset to letter

    Returns:
        partial_pattern: pattern over the skeleton alphabet
    """
    base = min(cells)
    pinned = params.anchors(n)
    for c, letter in cells.items():
        for q, p in enumerate(params.group_cells(n, c - base, n)):
            pinned[p] = C0 + ((letter >> (n - 1 - q)) & 1)
    return partial_pattern({(p,): a for p, a in pinned.items()}, SIGMA, 1)


def transform_forbidden(
    params: skeleton, n: int, forbidden: subshift
) -> pattern_stream:
    """Forbidden patterns making layer n decode into a subshift.

    Letters of the subshift alphabet that do not exist are forbidden first,
    then every forbidden pattern is written on consecutive layer n meta
    coding cells.

    Args:
        params (skeleton): skeleton parameters
        n (int): layer
        forbidden (subshift): 1-D subshift with alphabet size s <= 2^n

    Returns:
        pattern_stream: lazy stream of skeleton patterns

    Raises:
        AlphabetTooLarge: If s > 2^n
    """
    s = forbidden.size
    if s > 2 ** n:
        raise AlphabetTooLarge(f"alphabet {s} does not fit the {n} bits of layer {n}")
    assert forbidden.dimension == 1, "layers carry one dimensional subshifts"

    def source() -> Iterator[partial_pattern]:
        for letter in range(s, 2 ** n):
            yield letter_pattern(params, n, {0: letter})
        for p in forbidden.forbidden:
            yield letter_pattern(params, n, {c[0]: a for c, a in p.cells})
            log.debug("layer %d: transported %s", n, p)

    return pattern_stream(source, f"A{n}({forbidden.name})")
