"""Subshift specifications and their forbidden pattern streams."""
import itertools
import logging
import threading
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Union

from univshift.errors import HeaderMismatch
from univshift.types import alphabet, partial_pattern

log = logging.getLogger(__name__)

PatternSource = Union[
    Sequence[partial_pattern], Callable[[], Iterator[partial_pattern]]
]


class pattern_stream:
    """Total indexable stream of forbidden patterns.

    A finite source is padded by repeating its last pattern. A generator
    source is pulled lazily and memoized; index i always yields the same
    pattern. Fills happen under a lock so concurrent readers see one
    sequence.
    """

    def __init__(self, source: PatternSource, name: str = "patterns") -> None:
        """Stream over a list or a generator factory.

        Args:
            source (Sequence, Callable): patterns or zero-argument factory
                returning an iterator of patterns
            name (str): Name used in logs and serialization
        """
        self.name = name
        self._lock = threading.Lock()
        if callable(source):
            self._memo: List[partial_pattern] = []
            self._source: Optional[Iterator[partial_pattern]] = source()
        else:
            self._memo = list(source)
            self._source = None

    def _fill(self, count: int) -> None:
        with self._lock:
            while self._source is not None and len(self._memo) < count:
                try:
                    self._memo.append(next(self._source))
                except StopIteration:
                    self._source = None
                    log.debug("stream %s exhausted at %d", self.name, len(self._memo))

    @property
    def exhausted(self) -> bool:
        """Whether every pattern of the source is known."""
        return self._source is None

    def known_length(self) -> Optional[int]:
        """Number of distinct stream positions, if the source is finite.

        Returns:
            int: length for finite sources, None while still unknown
        """
        return len(self._memo) if self._source is None else None

    def prefix(self, count: int) -> List[partial_pattern]:
        """First patterns of the stream, without padding.

        Args:
            count (int): Number wanted

        Returns:
            List: up to ``count`` patterns, fewer if the source is finite
        """
        self._fill(count)
        return self._memo[:count]

    def __getitem__(self, index: int) -> partial_pattern:
        self._fill(index + 1)
        if index < len(self._memo):
            return self._memo[index]
        if not self._memo:
            raise IndexError(f"stream {self.name} has no patterns")
        return self._memo[-1]

    def __iter__(self) -> Iterator[partial_pattern]:
        for i in itertools.count():
            self._fill(i + 1)
            if i >= len(self._memo):
                return
            yield self._memo[i]


class subshift:
    """Subshift given by an alphabet, a dimension and forbidden patterns."""

    def __init__(
        self,
        size: int,
        dimension: int,
        forbidden: Union[pattern_stream, PatternSource],
        sft: bool = False,
        name: str = "subshift",
    ) -> None:
        """Subshift specification.

        Args:
            size (int): Alphabet size
            dimension (int): Dimension d
            forbidden (pattern_stream, Sequence, Callable): forbidden patterns
            sft (bool): Finite forbidden set; needs a finite source
            name (str): Display name

        Raises:
            Exception: If sft is requested over a generator source
        """
        self._alphabet = alphabet(size)
        assert dimension >= 1, "dimension must be at least 1"
        self.dimension = dimension
        if not isinstance(forbidden, pattern_stream):
            forbidden = pattern_stream(forbidden, name)
        self.forbidden = forbidden
        self.name = name
        if sft and not forbidden.exhausted:
            raise Exception("sft subshift needs a finite list of forbidden patterns")
        self.sft_bound: Optional[int] = forbidden.known_length() if sft else None

    @property
    def size(self) -> int:
        """Alphabet size."""
        return self._alphabet.size

    @property
    def alphabet(self) -> alphabet:
        """Alphabet of the subshift."""
        return self._alphabet

    @property
    def is_sft(self) -> bool:
        """Whether the forbidden set is known to be finite."""
        return self.sft_bound is not None

    def first(self, depth: int) -> List[partial_pattern]:
        """First forbidden patterns, checked against the header.

        Args:
            depth (int): Number of patterns t

        Returns:
            List: at most t patterns

        Raises:
            HeaderMismatch: If a pattern has another alphabet or dimension
        """
        patterns = self.forbidden.prefix(depth)
        for p in patterns:
            if p.size != self.size or p.dimension != self.dimension:
                raise HeaderMismatch(
                    f"pattern {p} does not match alphabet {self.size} "
                    f"dimension {self.dimension} of {self.name}"
                )
        return patterns

    def all_patterns(self) -> List[partial_pattern]:
        """Every forbidden pattern of an SFT.

        Returns:
            List: forbidden patterns

        Raises:
            Exception: If the subshift is not an SFT
        """
        if self.sft_bound is None:
            raise Exception(f"{self.name} has no finite forbidden set")
        return self.first(self.sft_bound)

    def __repr__(self) -> str:
        return (
            f"subshift({self.name}, size={self.size}, dimension={self.dimension}, "
            f"sft_bound={self.sft_bound})"
        )


def forbid_words(words: Iterable[str], size: int = 2, name: str = None) -> subshift:
    """One dimensional SFT forbidding full words.

    Args:
        words (Iterable[str]): Forbidden words as digit strings
        size (int): Alphabet size
        name (str): Display name

    Returns:
        subshift: the SFT
    """
    words = list(words)
    patterns = [partial_pattern.from_word(w, size) for w in words]
    name = name or "forbid:" + ",".join(words)
    return subshift(size, 1, patterns, sft=True, name=name)


def golden_mean() -> subshift:
    """Golden mean shift: no two adjacent ones.

    Returns:
        subshift: SFT forbidding "11"
    """
    return forbid_words(["11"], 2, "golden_mean")


def no00no11() -> subshift:
    """Binary shift forbidding both "00" and "11".

    Returns:
        subshift: SFT whose points are the two alternating sequences
    """
    return forbid_words(["00", "11"], 2, "no00no11")


def fullshift(size: int) -> subshift:
    """Full shift without forbidden patterns.

    Args:
        size (int): Alphabet size

    Returns:
        subshift: full shift
    """
    return subshift(size, 1, [], sft=True, name=f"fullshift:{size}")


def fullshift_sft(size: int) -> subshift:
    """Full shift on ``size`` letters written with one trivial pattern.

    The alphabet gets one extra letter which is forbidden by a radius 0
    pattern, so the shift is the full shift yet has a codable forbidden set.

    Args:
        size (int): Number of usable letters

    Returns:
        subshift: SFT over size+1 letters forbidding letter ``size``
    """
    return subshift(
        size + 1,
        1,
        [partial_pattern({(0,): size}, size + 1, 1)],
        sft=True,
        name=f"fullshift_sft:{size}",
    )
