"""Windows of layered skeleton configurations and decoded layer languages."""
import logging
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import numpy as np

from univshift.codecs.nat import z_coords
from univshift.common import core
from univshift.errors import BudgetExceeded
from univshift.layers.decode import layer_decoder
from univshift.layers.skeleton import C0, LB, RB, skeleton
from univshift.operators.machine import oracle_machine
from univshift.symbolic.subshift import subshift
from univshift.symbolic.windows import window_source
from univshift.symbolic.words import avoid_mask
from univshift.types import word

log = logging.getLogger(__name__)


class window_batch(NamedTuple):
    """Windows cut at one offset; rows differ only in free coding cells."""

    start: int
    rows: np.ndarray
    roles: np.ndarray


class layered_windows(window_source):
    """Windows of skeleton configurations with a few free layers.

    The configuration is the periodic extension of a depth T period. Free
    layers take every value of the first n coding cells of their meta
    coding cells, the other layers up to T repeat a canonical letter
    sequence, and deeper cells hold C0. Windows are cut at every offset of
    one period and filtered by the first t forbidden patterns of the spec,
    so the table is exact for the configurations it covers.
    """

    def __init__(
        self,
        params: skeleton,
        spec: subshift,
        free: Iterable[int],
        canonical: Optional[Mapping[int, Sequence[int]]] = None,
        depth: Optional[int] = None,
        phases: Optional[Sequence[int]] = None,
        caps: Optional[core] = None,
    ) -> None:
        """Window source of a layered spec.

        Args:
            params (skeleton): skeleton parameters
            spec (subshift): 1-D spec over the skeleton alphabet
            free (Iterable[int]): layers whose letters are enumerated
            canonical (Mapping): layer to periodic letter sequence
            depth (int): T, default one more than the deepest free layer
            phases (Sequence[int]): window offsets, default all of m_T
            caps (core): caps; uses max_windows
        """
        super().__init__(spec)
        assert spec.dimension == 1, "layered windows are one dimensional"
        self.params = params
        self.free = tuple(sorted(set(free)))
        self.depth = depth or max(self.free + (0,)) + 1
        self.canonical = {
            n: tuple(letters)
            for n, letters in (canonical or {}).items()
            if n <= self.depth and n not in self.free
        }
        period = params.geometry(self.depth).m
        self.phases = tuple(range(period)) if phases is None else tuple(phases)
        self.caps = caps or core()
        self._batches: Dict[Tuple[int, int], List[window_batch]] = {}

    def frame(self, start: int, length: int) -> Tuple[np.ndarray, np.ndarray]:
        """Canonical window and the columns left free.

        Args:
            start (int): position of the first cell in the configuration
            length (int): window length

        Returns:
            Tuple: (letters, free column indices in position order)
        """
        T = self.depth
        lay = self.params.layout(T)
        m = lay.length
        absolute = start + np.arange(length, dtype=np.int64)
        pos = absolute % m
        period = absolute // m
        out = np.full(length, C0, dtype=np.int8)
        out[lay.role[pos] == LB] = LB
        out[lay.role[pos] == RB] = RB
        free_cols = []
        for n in range(1, T + 1):
            sel = (lay.layer[pos] == n) & (lay.role[pos] == C0) & (lay.rank[pos] < n)
            if n in self.free:
                free_cols.append(np.nonzero(sel)[0])
            elif n in self.canonical:
                cols = np.nonzero(sel)[0]
                letters = np.array(self.canonical[n], dtype=np.int64)
                per = self.params.groups_per_period(n, T)
                g = period[cols] * per + lay.group[pos[cols]]
                bits = (letters[g % len(letters)] >> (n - 1 - lay.rank[pos[cols]])) & 1
                out[cols] = C0 + bits
        if free_cols:
            cols = np.sort(np.concatenate(free_cols))
        else:
            cols = np.zeros(0, np.int64)
        return out, cols

    def batch(self, start: int, length: int, depth: int) -> window_batch:
        """Admissible windows cut at one offset.

        Args:
            start (int): offset
            length (int): window length
            depth (int): number t of forbidden patterns to avoid

        Returns:
            window_batch: surviving rows

        Raises:
            BudgetExceeded: If the free cells give too many windows
        """
        base, cols = self.frame(start, length)
        count = 2 ** len(cols)
        if count > self.caps.max_windows:
            raise BudgetExceeded(
                f"{len(cols)} free cells give {count} windows,"
                f" cap {self.caps.max_windows}"
            )
        index = np.arange(count, dtype=np.int64)
        shifts = np.arange(len(cols) - 1, -1, -1, dtype=np.int64)
        rows = np.repeat(base[None, :], count, axis=0)
        rows[:, cols] = C0 + ((index[:, None] >> shifts[None, :]) & 1)
        keep = avoid_mask(rows, (length,), self.spec.first(depth))
        return window_batch(start, rows[keep], base)

    def batches(self, length: int, depth: int) -> List[window_batch]:
        """Non-empty batches over every phase.

        Args:
            length (int): window length
            depth (int): number t of forbidden patterns to avoid

        Returns:
            List[window_batch]: batches in phase order
        """
        key = (length, depth)
        if key not in self._batches:
            found = [self.batch(s, length, depth) for s in self.phases]
            self._batches[key] = [b for b in found if len(b.rows)]
            log.debug(
                "%s: %d windows of length %d over %d phases",
                self.spec.name,
                sum(len(b.rows) for b in self._batches[key]),
                length,
                len(self.phases),
            )
        return self._batches[key]

    def _build(self, radius: int, depth: int) -> np.ndarray:
        found = self.batches(2 * radius + 1, depth)
        if not found:
            return np.zeros((0, 2 * radius + 1), dtype=np.int8)
        return np.unique(np.concatenate([b.rows for b in found]), axis=0)

    def exists(self, radius: int, depth: int) -> bool:
        """Whether any phase leaves a window.

        Args:
            radius (int): i
            depth (int): t

        Returns:
            bool: True if at least one window exists
        """
        return bool(self.batches(2 * radius + 1, depth))

    def images(
        self,
        m: oracle_machine,
        radius: int,
        depth: int,
        inputs: Sequence[int],
        step_budget: int = 10_000,
    ) -> np.ndarray:
        """Operator outputs on every window, batched for layer decoders.

        Args:
            m (oracle_machine): operator
            radius (int): i
            depth (int): t
            inputs (Sequence[int]): operator inputs
            step_budget (int): queries allowed per run of other operators

        Returns:
            np.ndarray: windows x inputs table of outputs
        """
        if not isinstance(m, layer_decoder) or m.skeleton.k != self.params.k:
            return super().images(m, radius, depth, inputs, step_budget)
        cells = [n for n in inputs if n >= 2]
        centers = [radius + m.geometry.m * z_coords(n - 2, 1)[0] for n in cells]
        parts = []
        for b in self.batches(2 * radius + 1, depth):
            decoded = m.decode_rows(b.rows, b.roles, centers)
            out = np.zeros((len(b.rows), len(inputs)), dtype=np.int64)
            for q, n in enumerate(inputs):
                if n == 0:
                    out[:, q] = 2 ** m.layer
                elif n == 1:
                    out[:, q] = 1
                else:
                    out[:, q] = decoded[:, cells.index(n)]
            parts.append(out)
        if not parts:
            return np.zeros((0, len(inputs)), dtype=np.int64)
        return np.concatenate(parts)


def decoded_language(
    params: skeleton,
    spec: subshift,
    n: int,
    length: int,
    depth: int = 64,
    canonical: Optional[Mapping[int, Sequence[int]]] = None,
    margin: Optional[int] = None,
    caps: Optional[core] = None,
) -> Set[word]:
    """Words of length ``length`` read by L_n on admissible layered windows.

    Layer n is enumerated, the other layers hold their canonical letters.
    A margin on both sides lets forbidden patterns reach the decoded cells.

    Args:
        params (skeleton): skeleton parameters
        spec (subshift): layered spec
        n (int): decoded layer
        length (int): decoded word length
        depth (int): number t of forbidden patterns to avoid
        canonical (Mapping): layer to periodic letter sequence
        margin (int): extra cells on each side, default m_n
        caps (core): caps

    Returns:
        Set[word]: decoded words over 2^n letters
    """
    decoder = layer_decoder(params, n)
    geo = decoder.geometry
    margin = geo.m if margin is None else margin
    total = (length - 1) * geo.m + 2 * geo.rho + 2 * margin + 1
    source = layered_windows(params, spec, [n], canonical, phases=[0], caps=caps)
    centers = [margin + geo.rho + q * geo.m for q in range(length)]
    found: Set[word] = set()
    for b in source.batches(total, depth):
        letters = decoder.decode_rows(b.rows, b.roles, centers)
        found.update(word(r, 2 ** n) for r in np.unique(letters, axis=0).tolist())
    log.info("L%d language of length %d: %d words", n, length, len(found))
    return found
