"""Two dimensional lift of a layered spec with column constant roles."""
import logging
from typing import Iterator, List, Optional, Sequence

import numpy as np

from univshift.layers.decode import layer_decoder, phi_code
from univshift.layers.skeleton import SIGMA, role, skeleton
from univshift.operators.builtin import block_subsample, rowwise_operator
from univshift.symbolic.subshift import pattern_stream, subshift
from univshift.types import partial_pattern

log = logging.getLogger(__name__)


def vertical_patterns() -> List[partial_pattern]:
    """Vertical pairs of letters with different roles.

    Returns:
        List[partial_pattern]: the ten 1x2 patterns {(0,0): a, (0,1): b}
    """
    return [
        partial_pattern({(0, 0): a, (0, 1): b}, SIGMA, 2)
        for a in range(SIGMA)
        for b in range(SIGMA)
        if role(a) != role(b)
    ]


def axis_constant_lift(spec_1d: subshift, name: Optional[str] = None) -> subshift:
    """2-D spec whose rows lie in a 1-D layered spec and share their roles.

    Cell (x, y) is column x of row y. Coding values vary freely between
    rows; bracket and coding roles are constant along columns.

    Args:
        spec_1d (subshift): 1-D spec over the skeleton alphabet
        name (str): spec name

    Returns:
        subshift: 2-D spec
    """
    assert spec_1d.dimension == 1 and spec_1d.size == SIGMA, "need a skeleton spec"

    def source() -> Iterator[partial_pattern]:
        yield from vertical_patterns()
        for p in spec_1d.forbidden:
            yield partial_pattern({(c[0], 0): a for c, a in p.cells}, SIGMA, 2)

    name = name or f"lift({spec_1d.name})"
    return subshift(SIGMA, 2, pattern_stream(source, name), name=name)


def lifted_decoder(params: skeleton, n: int) -> block_subsample:
    """L_n applied on every row.

    Args:
        params (skeleton): skeleton parameters
        n (int): layer

    Returns:
        block_subsample: 2-D operator with stride (m_n, 1)
    """
    return rowwise_operator(phi_code(params, n), params.geometry(n).m)


def decode_rowwise(
    params: skeleton, n: int, window: np.ndarray, centers: Sequence[int]
) -> np.ndarray:
    """Layer n letters of every row of a 2-D window.

    Args:
        params (skeleton): skeleton parameters
        n (int): layer
        window (np.ndarray): array indexed [x, y]
        centers (Sequence[int]): columns of the decoded cells

    Returns:
        np.ndarray: rows x centers letters
    """
    rows = np.asarray(window).T
    return layer_decoder(params, n).decode_rows(rows, rows[0], centers)
