"""Layered Toeplitz skeleton: local rules, parser, generator and forbidden words.

Letters are LB=0, RB=1, C0=2, C1=3. With period P = 2(k+2), one level of
the skeleton reads, per period, a left bracket, k coding cells, a right
bracket and a slot of k+2 cells. Every slot holds cells of one role and
collapses to one letter of the next level, which obeys the same rules.
Coding values inside a slot are free; only roles must agree.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from univshift.common import core
from univshift.errors import NoCompleteCell, SizeMismatch
from univshift.symbolic.subshift import pattern_stream, subshift
from univshift.types import partial_pattern, word

log = logging.getLogger(__name__)

LB, RB, C0, C1 = 0, 1, 2, 3
SIGMA = 4
LETTERS = "LR01"
ROLE_NAMES = {LB: "left-bracket", RB: "right-bracket", C0: "coding"}
UNRESOLVED = "unresolved"

# rule ids reported by the checker
RULE_LEFT = "left-bracket"
RULE_CODING = "coding-run"
RULE_RIGHT = "right-bracket"
RULE_SLOT = "slot-uniform"


def role(letter: int) -> int:
    """Role of a letter: LB, RB or C0 standing for any coding letter.

    Args:
        letter (int): skeleton letter

    Returns:
        int: LB, RB or C0
    """
    return letter if letter < C0 else C0


def parse_letters(text: str) -> word:
    """Skeleton word from text.

    Accepts one character per letter (``L``, ``R``, ``0``, ``1``) or
    space separated tokens ``LB``, ``RB``, ``C0``, ``C1``.

    Args:
        text (str): word text

    Returns:
        word: word over the skeleton alphabet

    Raises:
        Exception: If a character is not a skeleton letter
    """
    tokens = {"LB": LB, "RB": RB, "C0": C0, "C1": C1}
    parts = text.split()
    if parts and all(p in tokens for p in parts):
        return word([tokens[p] for p in parts], SIGMA)
    letters = []
    for ch in "".join(parts):
        if ch not in LETTERS:
            raise Exception(f"'{ch}' is not a skeleton letter (use L, R, 0, 1)")
        letters.append(LETTERS.index(ch))
    return word(letters, SIGMA)


def format_letters(w: Sequence[int]) -> str:
    """Text of a skeleton word with letters L, R, 0, 1.

    Args:
        w (Sequence[int]): skeleton word

    Returns:
        str: text
    """
    return "".join(LETTERS[int(a)] for a in w)


@dataclass(frozen=True)
class layer_geometry:
    """Period m, coding cell count kappa and decoder radius rho of a layer."""

    k: int
    n: int
    m: int
    kappa: int
    rho: int


def geometry(k: int, n: int) -> layer_geometry:
    """Geometry of layer n.

    Args:
        k (int): coding cells per group, at least 3
        n (int): layer, at least 1

    Returns:
        layer_geometry: m_n = (2(k+2))^n, kappa_n = k(k+2)^(n-1), rho_n = m_n/2
    """
    assert k >= 3 and n >= 1, "need k >= 3 and n >= 1"
    m = (2 * (k + 2)) ** n
    return layer_geometry(k, n, m, k * (k + 2) ** (n - 1), m // 2)


@dataclass(frozen=True)
class verdict:
    """Checker outcome; falsy for a violation."""

    ok: bool
    layer: int = 0
    position: int = -1
    rule: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> Dict[str, Union[bool, int, str]]:
        """JSON form.

        Returns:
            Dict: verdict fields
        """
        if self.ok:
            return {"valid": True}
        return {
            "valid": False,
            "layer": self.layer,
            "position": self.position,
            "rule": self.rule,
        }


VALID = verdict(True)


@dataclass(frozen=True)
class meta_cell:
    """Layer n meta coding cell located in a window."""

    layer: int
    start: int
    positions: Tuple[int, ...]
    complete: bool


@dataclass
class layer_parse:
    """Per-cell (layer, role) assignment and located meta coding cells."""

    depth: int
    cells: List[Tuple[Optional[int], str]]
    groups: Dict[int, List[meta_cell]]
    valid: verdict

    def assignment(self, position: int) -> Tuple[Optional[int], str]:
        """Layer and role of a cell.

        Args:
            position (int): cell position

        Returns:
            Tuple: (layer or None, role name)
        """
        return self.cells[position]


@dataclass(frozen=True)
class skeleton_layout:
    """Positions of every layer in one period of the depth N skeleton.

    Arrays are indexed by position. ``layer`` is 0 on fill cells, ``role``
    is LB, RB, C0 or -1, ``group`` numbers the meta coding cells of each
    layer left to right and ``rank`` orders the real cells inside a group.
    """

    depth: int
    layer: np.ndarray
    role: np.ndarray
    group: np.ndarray
    rank: np.ndarray

    @property
    def length(self) -> int:
        """Period length m_N."""
        return len(self.layer)

    def coding(self, n: int) -> np.ndarray:
        """Positions of the coding cells of layer n.

        Args:
            n (int): layer

        Returns:
            np.ndarray: positions in increasing order
        """
        return np.nonzero((self.layer == n) & (self.role == C0))[0]

    def brackets(self, n: int) -> np.ndarray:
        """Positions of the bracket cells of layer n.

        Args:
            n (int): layer

        Returns:
            np.ndarray: positions in increasing order
        """
        return np.nonzero((self.layer == n) & (self.role != C0))[0]


class _level:
    """One level of a word being parsed: roles, real spans, completeness."""

    __slots__ = ("roles", "spans", "complete")

    def __init__(
        self, roles: List[int], spans: List[Tuple[int, ...]], complete: List[bool]
    ) -> None:
        self.roles = roles
        self.spans = spans
        self.complete = complete


_AMBIGUOUS = ("ambiguous",)


def _merge(a: Optional[tuple], b: Optional[tuple]) -> Optional[tuple]:
    if a is None:
        return b
    if b is None or a == b:
        return a
    return _AMBIGUOUS


class skeleton(core):
    """Layered skeleton with parameter k.

    Holds caps through ``core`` and memoizes its layouts and forbidden
    stream, so one instance should be shared by everything built on it.
    """

    k_min = 3
    _k = 4

    def __init__(self, k: int = 4, **caps: int) -> None:
        """Skeleton with k coding cells per group.

        Args:
            k (int): coding cells between a pair of brackets
            caps (int): caps forwarded to core
        """
        super().__init__(**caps)
        self.k = k
        self._layouts: Dict[int, skeleton_layout] = {}
        self._stream: Optional[pattern_stream] = None

    @property
    def k(self) -> int:
        """Coding cells per group."""
        return self._k

    @k.setter
    def k(self, value: int) -> None:
        """Set k.

        Args:
            value (int): k, an integer greater than 2

        Raises:
            Exception: If k is not an integer greater than 2
        """
        if not isinstance(value, int) or value < self.k_min:
            raise Exception(f"k must be an integer greater than 2, got {value}")
        self._k = value

    @property
    def period(self) -> int:
        """Level period P = 2(k+2)."""
        return 2 * (self.k + 2)

    def geometry(self, n: int) -> layer_geometry:
        """Geometry of layer n.

        Args:
            n (int): layer

        Returns:
            layer_geometry: m, kappa, rho
        """
        return geometry(self.k, n)

    def depth_for_length(self, length: int) -> int:
        """Depth checked on words of a length: ceil(log_P length) + 1.

        Args:
            length (int): word length

        Returns:
            int: depth
        """
        d = 0
        while self.period ** d < length:
            d += 1
        return d + 1

    # parser

    def _phases(self, lv: _level) -> Tuple[List[int], Optional[int]]:
        """Candidate phases forced by bracket anchors.

        An LB followed by a coding cell sits at slot position 0 and a
        coding cell followed by RB sits at position k.

        Args:
            lv (_level): level

        Returns:
            Tuple: (candidate phases, index of a conflicting anchor)
        """
        P, k = self.period, self.k
        forced: Optional[int] = None
        roles = lv.roles
        for i in range(len(roles) - 1):
            a, b = roles[i], roles[i + 1]
            if a == LB and b == C0:
                phase = (-i) % P
            elif a == C0 and b == RB:
                phase = (k - i) % P
            else:
                continue
            if forced is None:
                forced = phase
            elif forced != phase:
                return [], i
        return (list(range(P)) if forced is None else [forced]), None

    def _apply_phase(
        self, lv: _level, phase: int
    ) -> Tuple[Optional[Tuple[int, str]], List[Tuple[int, int]], List[List[int]]]:
        """Check one level under a phase and collapse its slots.

        Args:
            lv (_level): level
            phase (int): offset of position 0 inside the period

        Returns:
            Tuple: (failure (index, rule) or None, structural (index, role)
            pairs, slot member lists in order)
        """
        P, k = self.period, self.k
        structural: List[Tuple[int, int]] = []
        slots: Dict[int, List[int]] = {}
        slot_role: Dict[int, int] = {}
        for i, ro in enumerate(lv.roles):
            s = (i + phase) % P
            if s == 0:
                if ro != LB:
                    return (i, RULE_LEFT), [], []
                structural.append((i, LB))
            elif s <= k:
                if ro != C0:
                    return (i, RULE_CODING), [], []
                structural.append((i, C0))
            elif s == k + 1:
                if ro != RB:
                    return (i, RULE_RIGHT), [], []
                structural.append((i, RB))
            else:
                b = (i + phase) // P
                if b in slot_role and slot_role[b] != ro:
                    return (i, RULE_SLOT), [], []
                slot_role.setdefault(b, ro)
                slots.setdefault(b, []).append(i)
        return None, structural, [slots[b] for b in sorted(slots)]

    def _collapse(self, lv: _level, members: List[List[int]]) -> _level:
        size = self.k + 2
        return _level(
            [lv.roles[m[0]] for m in members],
            [tuple(p for i in m for p in lv.spans[i]) for m in members],
            [len(m) == size and all(lv.complete[i] for i in m) for m in members],
        )

    def _analyse(
        self, lv: _level, depth: int, layer: int
    ) -> Tuple[bool, List[Optional[tuple]], Optional[Tuple[int, int, str]]]:
        """Validity and per-letter (layer, role) of a level.

        Args:
            lv (_level): level
            depth (int): levels still to check
            layer (int): layer number of this level

        Returns:
            Tuple: (valid, per-letter assignment, failure (layer, real
            position, rule) of the deepest failing phase)
        """
        n = len(lv.roles)
        if depth == 0 or n <= 1:
            return True, [_AMBIGUOUS] * n, None
        phases, conflict = self._phases(lv)
        best: Optional[Tuple[int, int, str]] = None
        if conflict is not None:
            best = (layer, lv.spans[conflict + 1][0], RULE_CODING)
        poss: List[Optional[tuple]] = [None] * n
        ok_any = False
        for phase in phases:
            fail, structural, members = self._apply_phase(lv, phase)
            if fail is not None:
                cand = (layer, lv.spans[fail[0]][0], fail[1])
                best = cand if best is None or cand[:2] > best[:2] else best
                continue
            sub_ok, sub_poss, sub_fail = self._analyse(
                self._collapse(lv, members), depth - 1, layer + 1
            )
            if not sub_ok:
                if sub_fail is not None and (best is None or sub_fail[:2] > best[:2]):
                    best = sub_fail
                continue
            ok_any = True
            for i, ro in structural:
                poss[i] = _merge(poss[i], (layer, ROLE_NAMES[ro]))
            for j, m in enumerate(members):
                for i in m:
                    poss[i] = _merge(poss[i], sub_poss[j])
        if ok_any:
            return True, poss, None
        return False, poss, best

    @staticmethod
    def _base(w: Sequence[int]) -> _level:
        roles = [role(int(a)) for a in w]
        return _level(roles, [(i,) for i in range(len(w))], [True] * len(w))

    def check(self, w: Sequence[int], depth: int) -> verdict:
        """Whether w fits a configuration obeying layers 1..depth.

        Args:
            w (Sequence[int]): skeleton word
            depth (int): N, at least 1

        Returns:
            verdict: VALID or the violation of the deepest failing phase
        """
        assert depth >= 1, "depth must be at least 1"
        ok, _, fail = self._analyse(self._base(w), depth, 1)
        if ok:
            return VALID
        assert fail is not None
        return verdict(False, *fail)

    def parse(self, w: Sequence[int], depth: int) -> layer_parse:
        """Layer and role of every cell of w.

        A cell is assigned when every consistent reading of w agrees on
        it; otherwise, or if it belongs to a layer deeper than ``depth``, it
        is unresolved.

        Args:
            w (Sequence[int]): skeleton word
            depth (int): N

        Returns:
            layer_parse: assignment, meta coding cells, verdict
        """
        ok, poss, fail = self._analyse(self._base(w), depth, 1)
        cells: List[Tuple[Optional[int], str]] = []
        for p in poss if ok else [None] * len(w):
            if p is None or p is _AMBIGUOUS:
                cells.append((None, UNRESOLVED))
            else:
                cells.append((p[0], p[1]))
        groups: Dict[int, List[meta_cell]] = {}
        for n in range(1, depth + 1):
            try:
                groups[n] = self.locate_groups(w, n)
            except NoCompleteCell:
                break
        return layer_parse(depth, cells, groups, VALID if ok else verdict(False, *fail))

    def reading_phase(self, letters: Sequence[int]) -> Optional[int]:
        """Phase of one level read from consecutive letters.

        Args:
            letters (Sequence[int]): consecutive letters of a level, any
                letter of a slot standing for the slot

        Returns:
            int: the only phase under which the letters obey the layer
            rules, None if there are several or none
        """
        lv = self._base(letters)
        phases, _ = self._phases(lv)
        found = [p for p in phases if self._apply_phase(lv, p)[0] is None]
        return found[0] if len(found) == 1 else None

    def locate_groups(self, w: Sequence[int], n: int) -> List[meta_cell]:
        """Meta coding cells of layer n in w, left to right.

        Needs the phase of every level 1..n to be determined by w.

        Args:
            w (Sequence[int]): skeleton word
            n (int): layer

        Returns:
            List[meta_cell]: located cells, complete or cut by the window

        Raises:
            NoCompleteCell: If a level's phase is not determined
        """
        lv = self._base(w)
        k = self.k
        for layer in range(1, n + 1):
            phases, _ = self._phases(lv)
            found = []
            for phase in phases:
                fail, structural, members = self._apply_phase(lv, phase)
                if fail is None:
                    found.append((phase, structural, members))
            if len(found) != 1:
                raise NoCompleteCell(
                    f"{len(found)} readings of level {layer} in a window of {len(w)}"
                )
            phase, structural, members = found[0]
            if layer == n:
                by_block: Dict[int, List[int]] = {}
                for i, ro in structural:
                    if ro == C0:
                        by_block.setdefault((i + phase) // self.period, []).append(i)
                cells = []
                for b in sorted(by_block):
                    items = by_block[b]
                    positions = tuple(sorted(p for i in items for p in lv.spans[i]))
                    complete = len(items) == k and all(lv.complete[i] for i in items)
                    cells.append(meta_cell(n, positions[0], positions, complete))
                return cells
            lv = self._collapse(lv, members)
        return []  # pragma: no cover

    def phi_positions(self, w: Sequence[int], n: int) -> Tuple[int, ...]:
        """Positions of the first n real coding cells read by the layer n decoder.

        Args:
            w (Sequence[int]): skeleton window
            n (int): layer

        Returns:
            Tuple: positions in the leftmost complete meta coding cell

        Raises:
            NoCompleteCell: If no complete layer n meta coding cell is seen
        """
        complete = [g for g in self.locate_groups(w, n) if g.complete]
        if not complete:
            raise NoCompleteCell(f"no complete layer {n} meta coding cell in window")
        return min(complete, key=lambda g: g.start).positions[:n]

    # aligned configuration geometry

    def rep(self, level: int, q: int) -> int:
        """First real cell of letter q of a level in the aligned skeleton.

        The aligned skeleton has a layer 1 left bracket at cell 0 and the
        left bracket of layer j on letter 0 of level j-1.

        Args:
            level (int): 0 for cells, j for the letters of layer j+1
            q (int): letter index, may be negative

        Returns:
            int: cell position
        """
        for _ in range(level):
            q = q * self.period + self.k + 2
        return q

    def real_cells(self, level: int, q: int) -> Iterator[int]:
        """Real cells of a letter of a level, in increasing order.

        Args:
            level (int): level
            q (int): letter index

        Yields:
            int: cell positions
        """
        if level == 0:
            yield q
            return
        first = q * self.period + self.k + 2
        for t in range(self.k + 2):
            yield from self.real_cells(level - 1, first + t)

    def group_cells(self, n: int, c: int, count: int) -> List[int]:
        """First real coding cells of meta coding cell c of layer n.

        Args:
            n (int): layer
            c (int): meta coding cell index in the aligned skeleton
            count (int): number of cells wanted

        Returns:
            List[int]: positions in increasing order
        """
        found: List[int] = []
        for q in range(c * self.period + 1, c * self.period + self.k + 1):
            for p in self.real_cells(n - 1, q):
                if len(found) == count:
                    return found
                found.append(p)
        return found

    def anchors(self, n: int) -> Dict[int, int]:
        """Bracket cells fixing the phase of layers 1..n.

        A left bracket followed k+1 letters later by a right bracket only
        occurs at slot positions 0 and k+1.

        Args:
            n (int): deepest layer

        Returns:
            Dict[int, int]: position to LB or RB in the aligned skeleton
        """
        found: Dict[int, int] = {}
        for j in range(1, n + 1):
            found[self.rep(j - 1, 0)] = LB
            found[self.rep(j - 1, self.k + 1)] = RB
        return found

    # generator

    def layout(self, depth: int) -> skeleton_layout:
        """Layer layout of one period of the depth N skeleton.

        Args:
            depth (int): N

        Returns:
            skeleton_layout: per-position layer, role, group and rank
        """
        if depth in self._layouts:
            return self._layouts[depth]
        P, k = self.period, self.k
        m = P ** depth
        cur = np.arange(m, dtype=np.int64)
        layer = np.zeros(m, dtype=np.int64)
        roles = np.full(m, -1, dtype=np.int64)
        group = np.full(m, -1, dtype=np.int64)
        rank = np.full(m, -1, dtype=np.int64)
        active = np.ones(m, dtype=bool)
        for n in range(1, depth + 1):
            s = cur % P
            blk = cur // P
            lb = active & (s == 0)
            coding = active & (s >= 1) & (s <= k)
            rb = active & (s == k + 1)
            layer[lb | coding | rb] = n
            roles[lb] = LB
            roles[rb] = RB
            roles[coding] = C0
            group[coding] = blk[coding]
            idx = np.nonzero(coding)[0]
            g = group[idx]
            rank[idx] = np.arange(len(idx)) - np.searchsorted(g, g, side="left")
            active = active & (s >= k + 2)
            cur = np.where(active, blk, cur)
        result = skeleton_layout(depth, layer, roles, group, rank)
        self._layouts[depth] = result
        log.debug("layout depth %d: %d cells", depth, m)
        return result

    def groups_per_period(self, n: int, depth: int) -> int:
        """Number of layer n meta coding cells in a depth N period.

        Args:
            n (int): layer
            depth (int): N

        Returns:
            int: P^(N-n)
        """
        return self.period ** (depth - n)

    def generate(
        self,
        depth: int,
        bits: Optional[Sequence[Sequence[Sequence[int]]]] = None,
        fill: int = C0,
    ) -> word:
        """One period of the depth N skeleton.

        Args:
            depth (int): N
            bits (Sequence): bits[n-1][g] holds the kappa_n bits of group g
                of layer n, groups left to right; None means all zero
            fill (int): letter of the cells left to layer N+1

        Returns:
            word: period of length m_N

        Raises:
            SizeMismatch: If bits do not match the layout
        """
        lay = self.layout(depth)
        out = np.full(lay.length, fill, dtype=np.int64)
        out[lay.role == LB] = LB
        out[lay.role == RB] = RB
        if bits is not None and len(bits) != depth:
            raise SizeMismatch(f"bits for {len(bits)} layers, depth is {depth}")
        for n in range(1, depth + 1):
            idx = lay.coding(n)
            if bits is None:
                out[idx] = C0
                continue
            table = np.asarray(bits[n - 1], dtype=np.int64)
            want = (self.groups_per_period(n, depth), self.geometry(n).kappa)
            if table.shape != want:
                raise SizeMismatch(f"layer {n} bits shape {table.shape}, need {want}")
            if np.any((table != 0) & (table != 1)):
                raise SizeMismatch(f"layer {n} bits must be 0 or 1")
            out[idx] = C0 + table[lay.group[idx], lay.rank[idx]]
        return word(out.tolist(), SIGMA)

    def bits_from_hex(self, text: str, depth: int) -> List[np.ndarray]:
        """Split a hex string into per-layer bit tables.

        Bits are read most significant first, layer 1 groups first. Missing
        trailing bits are zero; surplus bits must be zero.

        Args:
            text (str): hex digits
            depth (int): N

        Returns:
            List[np.ndarray]: one (groups x kappa) table per layer

        Raises:
            SizeMismatch: If a surplus bit is set or text is not hex
        """
        try:
            flat = [int(b) for ch in text.strip() for b in format(int(ch, 16), "04b")]
        except ValueError:
            raise SizeMismatch(f"'{text}' is not a hex string")
        tables = []
        pos = 0
        for n in range(1, depth + 1):
            rows = self.groups_per_period(n, depth)
            kappa = self.geometry(n).kappa
            chunk = flat[pos : pos + rows * kappa]
            chunk += [0] * (rows * kappa - len(chunk))
            tables.append(np.array(chunk, dtype=np.int64).reshape(rows, kappa))
            pos += rows * kappa
        if any(flat[pos:]):
            raise SizeMismatch(f"{len(flat)} bits given, depth {depth} holds {pos}")
        return tables

    # forbidden words

    def _forbidden_words(self) -> Iterator[partial_pattern]:
        emitted = set()
        for length in itertools.count(1):
            depth = self.depth_for_length(length)
            found = 0
            for letters in itertools.product(range(SIGMA), repeat=length):
                if any(
                    letters[a:b] in emitted
                    for a in range(length)
                    for b in range(a + 1, length + 1)
                    if b - a < length
                ):
                    continue
                if not self.check(letters, depth):
                    emitted.add(letters)
                    found += 1
                    yield partial_pattern.from_word(letters, SIGMA)
            log.debug(
                "skeleton k=%d: %d forbidden words of length %d", self.k, found, length
            )

    def forbidden_stream(self) -> pattern_stream:
        """Minimal forbidden words of the skeleton, by length then lexicographically.

        Returns:
            pattern_stream: memoized stream shared by this instance
        """
        if self._stream is None:
            name = f"skeleton(k={self.k})"
            self._stream = pattern_stream(self._forbidden_words, name)
        return self._stream

    def spec(self) -> subshift:
        """The skeleton subshift.

        Returns:
            subshift: 1-D subshift over LB, RB, C0, C1
        """
        return subshift(SIGMA, 1, self.forbidden_stream(), name=f"skeleton(k={self.k})")


@lru_cache(maxsize=None)
def shared(k: int) -> skeleton:
    """Process wide skeleton for a k, so streams and layouts are memoized once.

    Args:
        k (int): k

    Returns:
        skeleton: shared instance
    """
    return skeleton(k)
