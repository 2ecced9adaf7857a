"""Word level operations: occurrence, admissible languages and block codes."""
import itertools
import logging
from typing import List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np

from univshift.errors import BudgetExceeded, OutOfWindow, WindowTooSmall
from univshift.symbolic.block_code import block_code
from univshift.symbolic.subshift import subshift
from univshift.types import partial_pattern, word

log = logging.getLogger(__name__)

DEFAULT_CAP = 2 ** 24


def matches(
    p: partial_pattern,
    w: Union[Sequence[int], np.ndarray],
    offset: Union[int, Tuple[int, ...]],
) -> bool:
    """Test p against w with p's origin placed at ``offset``.

    Args:
        p (partial_pattern): Pattern
        w (Sequence, np.ndarray): 1-D word or d-D window array
        offset (int, Tuple): Translation of the pattern

    Returns:
        bool: True iff every mapped cell equals the window cell

    Raises:
        OutOfWindow: If a mapped cell falls outside w
    """
    arr = np.asarray(w)
    if isinstance(offset, (int, np.integer)):
        offset = (int(offset),)
    assert len(offset) == p.dimension == arr.ndim, "dimension mismatch"
    for coord, letter in p.cells:
        pos = tuple(c + o for c, o in zip(coord, offset))
        if any(x < 0 or x >= side for x, side in zip(pos, arr.shape)):
            raise OutOfWindow(f"cell {coord} at offset {offset} leaves the window")
        if arr[pos] != letter:
            return False
    return True


def _strides(sides: Tuple[int, ...]) -> np.ndarray:
    strides = np.ones(len(sides), dtype=np.int64)
    for a in range(len(sides) - 2, -1, -1):
        strides[a] = strides[a + 1] * sides[a + 1]
    return strides


def placements(
    p: partial_pattern, sides: Tuple[int, ...]
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Flat cell indices of every placement of p inside a window.

    Args:
        p (partial_pattern): Pattern
        sides (Tuple): Window side lengths

    Returns:
        Tuple: (placements x cells index array, letters), None if p does
        not fit
    """
    coords, letters = p.arrays()
    spans = coords.max(axis=0) + 1
    if np.any(spans > np.array(sides)):
        return None
    strides = _strides(sides)
    grids = np.meshgrid(
        *[np.arange(side - span + 1) for side, span in zip(sides, spans)],
        indexing="ij",
    )
    shifts = np.stack([g.ravel() for g in grids], axis=1) @ strides
    return shifts[:, None] + (coords @ strides)[None, :], letters


def avoid_mask(
    windows: np.ndarray,
    sides: Tuple[int, ...],
    patterns: Sequence[partial_pattern],
) -> np.ndarray:
    """Rows of a window table that avoid every pattern.

    Columns that are constant over all rows are tested once, which keeps
    tables built from one structural frame cheap to filter.

    Args:
        windows (np.ndarray): rows x cells table, cells row-major over sides
        sides (Tuple): Window side lengths
        patterns (Sequence): Forbidden patterns

    Returns:
        np.ndarray: boolean mask of surviving rows
    """
    keep = np.ones(len(windows), dtype=bool)
    if len(windows) == 0:
        return keep
    first = windows[0]
    const = np.all(windows == first, axis=0)
    for p in patterns:
        placed = placements(p, sides)
        if placed is None:
            continue
        idx, letters = placed
        fixed = const[idx]
        possible = np.all(~fixed | (first[idx] == letters), axis=1)
        for row in idx[possible]:
            hit = np.all(windows[:, row] == letters, axis=1)
            keep &= ~hit
        if not keep.any():
            break
    return keep


def enumerate_blocks(size: int, cells: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Every assignment of letters to cells, in lexicographic order.

    Args:
        size (int): Alphabet size
        cells (int): Number of cells
        cap (int): Enumeration cap

    Returns:
        np.ndarray: size**cells x cells table

    Raises:
        BudgetExceeded: If size**cells exceeds the cap
    """
    total = size ** cells
    if total > cap:
        raise BudgetExceeded(f"{size}^{cells} = {total} words exceed cap {cap}")
    index = np.arange(total, dtype=np.int64)
    powers = size ** np.arange(cells - 1, -1, -1, dtype=np.int64)
    return ((index[:, None] // powers[None, :]) % size).astype(np.int8)


def admissible_blocks(
    spec: subshift, sides: Tuple[int, ...], depth: int, cap: int = DEFAULT_CAP
) -> np.ndarray:
    """Locally admissible windows of any dimension.

    Args:
        spec (subshift): Subshift
        sides (Tuple): Window side lengths, one per axis
        depth (int): Number t of forbidden patterns to avoid
        cap (int): Enumeration cap

    Returns:
        np.ndarray: surviving rows, cells row-major over sides
    """
    assert len(sides) == spec.dimension, "window dimension mismatch"
    table = enumerate_blocks(spec.size, int(np.prod(sides)), cap)
    keep = avoid_mask(table, tuple(sides), spec.first(depth))
    log.debug(
        "%s: %d of %d windows %s avoid %d patterns",
        spec.name,
        int(keep.sum()),
        len(table),
        sides,
        depth,
    )
    return table[keep]


def admissible_words(
    spec: subshift, length: int, depth: int, cap: int = DEFAULT_CAP
) -> Set[word]:
    """Words of a length avoiding the first forbidden patterns.

    This is the local notion: a word is kept if none of the first ``depth``
    patterns occurs in it, whether or not it extends to a configuration.

    Args:
        spec (subshift): 1-D subshift
        length (int): Word length
        depth (int): Number t of patterns to avoid
        cap (int): Enumeration cap

    Returns:
        Set[word]: admissible words
    """
    assert spec.dimension == 1, "admissible_words needs a 1-D subshift"
    assert length >= 1 and depth >= 0, "length must be positive, depth non-negative"
    rows = admissible_blocks(spec, (length,), depth, cap)
    return {word(r, spec.size) for r in rows.tolist()}


def find_admissible(spec: subshift, length: int, depth: int) -> Optional[word]:
    """Depth first search for one locally admissible word.

    Args:
        spec (subshift): 1-D subshift
        length (int): Word length
        depth (int): Number of patterns to avoid

    Returns:
        word: the lexicographically least admissible word, None if none
    """
    assert spec.dimension == 1, "find_admissible needs a 1-D subshift"
    checks: List[Tuple[np.ndarray, np.ndarray]] = []
    for p in spec.first(depth):
        coords, letters = p.arrays()
        if coords.max() + 1 <= length:
            checks.append((coords[:, 0], letters))
    # index patterns by their last cell so each extension checks only new hits
    by_end: List[Tuple[List[int], List[int], int]] = [
        (c.tolist(), v.tolist(), int(c.max())) for c, v in checks
    ]
    cells: List[int] = []

    def ok() -> bool:
        end = len(cells) - 1
        for offs, letters, span in by_end:
            start = end - span
            if start < 0:
                continue
            if all(cells[start + o] == a for o, a in zip(offs, letters)):
                return False
        return True

    def extend() -> bool:
        if len(cells) == length:
            return True
        for a in range(spec.size):
            cells.append(a)
            if ok() and extend():
                return True
            cells.pop()
        return False

    return word(cells, spec.size) if extend() else None


def sft_language(spec: subshift, length: int) -> Set[word]:
    """Exact language of a 1-D SFT.

    Builds the transition graph on admissible words one shorter than the
    longest forbidden pattern, trims vertices that lie on no bi-infinite
    path and reads words along the remaining paths.

    Args:
        spec (subshift): 1-D SFT
        length (int): Word length

    Returns:
        Set[word]: globally admissible words, empty for an empty SFT

    Raises:
        Exception: If spec is not a 1-D SFT
    """
    if spec.dimension != 1 or not spec.is_sft:
        raise Exception("sft_language needs a 1-D SFT")
    patterns = spec.all_patterns()
    span = max((p.shape()[0] for p in patterns), default=1)
    order = max(span - 1, 1)
    depth = len(patterns)
    vertices = [tuple(v) for v in admissible_blocks(spec, (order,), depth).tolist()]
    edges = [tuple(e) for e in admissible_blocks(spec, (order + 1,), depth).tolist()]

    g = nx.DiGraph()
    g.add_nodes_from(vertices)
    g.add_edges_from((e[:-1], e[1:]) for e in edges)
    _make_essential(g)

    if length <= order:
        return {word(v[:length], spec.size) for v in g.nodes}
    found: Set[word] = set()
    stack = [(v, v) for v in g.nodes]
    while stack:
        vertex, label = stack.pop()
        if len(label) == length:
            found.add(word(label, spec.size))
            continue
        for succ in g.successors(vertex):
            stack.append((succ, label + succ[-1:]))
    return found


def _make_essential(g: nx.DiGraph) -> None:
    nonextensible = [q for q in g if g.out_degree(q) == 0]
    while nonextensible:
        frontier = {q for q, _ in g.in_edges(nonextensible)}
        g.remove_nodes_from(nonextensible)
        nonextensible = [q for q in frontier if q in g and g.out_degree(q) == 0]

    noncoextensible = [q for q in g if g.in_degree(q) == 0]
    while noncoextensible:
        frontier = {q for _, q in g.out_edges(noncoextensible)}
        g.remove_nodes_from(noncoextensible)
        noncoextensible = [q for q in frontier if q in g and g.in_degree(q) == 0]


def apply_block_code(code: block_code, w: Sequence[int]) -> word:
    """Image of a word under a 1-D block code.

    Output position i corresponds to input position i + r.

    Args:
        code (block_code): 1-D code of radius r
        w (Sequence[int]): Input word

    Returns:
        word: image of length len(w) - 2r

    Raises:
        WindowTooSmall: If w is shorter than 2r+1
    """
    assert code.dimension == 1, "apply_block_code needs a 1-D code"
    r = code.radius
    if len(w) < 2 * r + 1:
        raise WindowTooSmall(f"word of length {len(w)} shorter than {2 * r + 1}")
    cells = list(w)
    out = [code(cells[i : i + 2 * r + 1]) for i in range(len(cells) - 2 * r)]
    return word(out, code.output_alphabet.size)


def subsample(w: Sequence[int], m: int, phase: int = 0) -> word:
    """Cells p, p+m, p+2m, ... of a word.

    Args:
        w (Sequence[int]): Word
        m (int): Stride
        phase (int): Start position p, 0 <= p < m

    Returns:
        word: subsampled word, possibly empty
    """
    assert m >= 1 and 0 <= phase < m, "need m >= 1 and 0 <= phase < m"
    size = w.size if isinstance(w, word) else max(list(w) + [0]) + 1
    return word(list(w)[phase::m], size)


def periodic_point(spec: subshift, depth: int, max_period: int = 8) -> Optional[word]:
    """Shortest word whose periodic repetition avoids the first patterns.

    Words are tried by period, then lexicographically.

    Args:
        spec (subshift): 1-D subshift
        depth (int): Number of patterns to avoid
        max_period (int): Longest period tried

    Returns:
        word: one period, None if no period up to ``max_period`` works
    """
    assert spec.dimension == 1, "periodic_point needs a 1-D subshift"
    patterns = spec.first(depth)
    span = max((p.shape()[0] for p in patterns), default=1)
    for period in range(1, max_period + 1):
        reps = (span + period - 1) // period + 1
        for letters in itertools.product(range(spec.size), repeat=period):
            row = np.array([letters * reps], dtype=np.int64)
            if avoid_mask(row, (row.shape[1],), patterns)[0]:
                return word(letters, spec.size)
    return None
