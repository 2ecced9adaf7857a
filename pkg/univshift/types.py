"""univshift value types: alphabets, words and partial patterns."""
import itertools
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import numpy as np

Coord = Tuple[int, ...]


class alphabet:
    """Finite alphabet {0, ..., size-1}."""

    def __init__(self, size: int) -> None:
        """Finite alphabet of letters 0..size-1.

        Args:
            size (int): Number of letters

        Raises:
            Exception: If size is not a positive integer
        """
        if not isinstance(size, (int, np.integer)) or size < 1:
            raise Exception(f"alphabet size must be a positive integer, got {size}")
        self.size = int(size)

    def letters(self) -> range:
        """Letters of the alphabet in increasing order.

        Returns:
            range: letters
        """
        return range(self.size)

    def __contains__(self, letter: object) -> bool:
        return isinstance(letter, (int, np.integer)) and 0 <= letter < self.size

    def __eq__(self, other: object) -> bool:
        return isinstance(other, alphabet) and other.size == self.size

    def __hash__(self) -> int:
        return hash(("alphabet", self.size))

    def __repr__(self) -> str:
        return f"alphabet({self.size})"


class word(tuple):
    """One dimensional full pattern anchored at offsets 0..len-1.

    Words compare and hash as plain tuples of letters so they can be mixed
    freely with tuples in sets.
    """

    size: int

    def __new__(cls, cells: Iterable[int], size: int) -> "word":
        """Build a word.

        Args:
            cells (Iterable[int]): Letters in order
            size (int): Alphabet size

        Returns:
            word: new word

        Raises:
            Exception: If a letter is outside the alphabet
        """
        obj = super().__new__(cls, (int(c) for c in cells))  # type: ignore
        for c in obj:
            if not 0 <= c < size:
                raise Exception(f"letter {c} outside alphabet of size {size}")
        obj.size = int(size)
        return obj

    @classmethod
    def from_string(cls, text: str, size: int) -> "word":
        """Parse a word written with one digit per letter.

        Args:
            text (str): Digits, e.g. "0110"
            size (int): Alphabet size

        Returns:
            word: parsed word
        """
        return cls((int(ch, 36) for ch in text), size)

    @property
    def alphabet(self) -> alphabet:
        """Alphabet of the word."""
        return alphabet(self.size)

    def factor(self, start: int, length: int) -> "word":
        """Contiguous subword.

        Args:
            start (int): First position
            length (int): Number of letters

        Returns:
            word: factor
        """
        return word(tuple.__getitem__(self, slice(start, start + length)), self.size)

    def factors(self, length: int) -> Iterator["word"]:
        """All factors of a given length, left to right.

        Args:
            length (int): Factor length

        Yields:
            word: each factor
        """
        for i in range(len(self) - length + 1):
            yield self.factor(i, length)

    def __str__(self) -> str:
        if self.size <= 36:
            return "".join(np.base_repr(c, 36) for c in self)
        return " ".join(str(c) for c in self)


class partial_pattern:
    """Finite map from Z^d coordinates to letters.

    Unmapped coordinates are wildcards. Occurrence is tested at every
    offset so two patterns that differ by a translation define the same
    constraint.
    """

    def __init__(
        self, cells: Mapping[Coord, int], size: int, dimension: int = None
    ) -> None:
        """Build a partial pattern.

        Args:
            cells (Mapping): coordinate tuple to letter
            size (int): Alphabet size
            dimension (int): Dimension, inferred from the cells if omitted

        Raises:
            Exception: If cells are empty, of mixed dimension or outside
                the alphabet
        """
        if not cells:
            raise Exception("partial pattern needs at least one mapped cell")
        items = []
        for coord, letter in cells.items():
            coord = tuple(int(c) for c in coord)
            if dimension is None:
                dimension = len(coord)
            if len(coord) != dimension:
                raise Exception(f"cell {coord} does not have dimension {dimension}")
            if not 0 <= letter < size:
                raise Exception(f"letter {letter} outside alphabet of size {size}")
            items.append((coord, int(letter)))
        self.size = int(size)
        self.dimension = int(dimension)  # type: ignore
        self.cells: Tuple[Tuple[Coord, int], ...] = tuple(sorted(items))

    @classmethod
    def from_word(
        cls, letters: Union[str, Sequence[int]], size: int, start: int = 0
    ) -> "partial_pattern":
        """One dimensional full pattern from a word.

        Args:
            letters (str, Sequence[int]): Digits string or letter sequence
            size (int): Alphabet size
            start (int): Coordinate of the first letter

        Returns:
            partial_pattern: pattern on start..start+len-1
        """
        if isinstance(letters, str):
            letters = [int(ch, 36) for ch in letters]
        return cls({(start + i,): a for i, a in enumerate(letters)}, size, 1)

    @classmethod
    def square(
        cls, letters: Sequence[int], radius: int, size: int, dimension: int
    ) -> "partial_pattern":
        """Full pattern on [-r;r]^d from letters in lexicographic order.

        Args:
            letters (Sequence[int]): (2r+1)^d letters
            radius (int): r
            size (int): Alphabet size
            dimension (int): d

        Returns:
            partial_pattern: full square pattern

        Raises:
            Exception: If the letter count does not fill the square
        """
        coords = list(square_coords(radius, dimension))
        if len(coords) != len(letters):
            raise Exception(
                f"{len(letters)} letters do not fill a square of radius {radius}"
            )
        return cls(dict(zip(coords, letters)), size, dimension)

    def as_dict(self) -> Dict[Coord, int]:
        """Cells as a dictionary.

        Returns:
            Dict: coordinate to letter
        """
        return dict(self.cells)

    def extent(self) -> Tuple[Coord, Coord]:
        """Smallest box containing the mapped cells.

        Returns:
            Tuple: per-axis minima and maxima
        """
        coords = np.array([c for c, _ in self.cells])
        return tuple(coords.min(axis=0).tolist()), tuple(coords.max(axis=0).tolist())

    def shape(self) -> Coord:
        """Side lengths of the bounding box.

        Returns:
            Tuple: per-axis lengths
        """
        lo, hi = self.extent()
        return tuple(b - a + 1 for a, b in zip(lo, hi))

    def normalized(self) -> "partial_pattern":
        """Translate so the bounding box starts at the origin.

        Returns:
            partial_pattern: translated pattern
        """
        lo, _ = self.extent()
        return self.translated(tuple(-c for c in lo))

    def translated(self, offset: Coord) -> "partial_pattern":
        """Translate every cell.

        Args:
            offset (Tuple): translation vector

        Returns:
            partial_pattern: translated pattern
        """
        return partial_pattern(
            {tuple(a + b for a, b in zip(c, offset)): v for c, v in self.cells},
            self.size,
            self.dimension,
        )

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """Normalized coordinates and letters as numpy arrays.

        Returns:
            Tuple: (n x d int array, n letters)
        """
        norm = self.normalized()
        coords = np.array([c for c, _ in norm.cells], dtype=np.int64)
        letters = np.array([v for _, v in norm.cells], dtype=np.int64)
        return coords, letters

    def square_radius(self) -> int:
        """Radius r if the pattern is full on [-r;r]^d, else -1.

        Returns:
            int: radius or -1
        """
        lo, hi = self.extent()
        r = hi[0]
        if any(a != -r or b != r for a, b in zip(lo, hi)):
            return -1
        if len(self.cells) != (2 * r + 1) ** self.dimension:
            return -1
        return r

    def to_record(self) -> Dict:
        """JSON manifest record of the pattern.

        Returns:
            Dict: ``{"word": ...}`` for contiguous 1-D patterns, else cells
        """
        if self.dimension == 1 and self.size <= 36:
            lo, hi = self.extent()
            if len(self.cells) == hi[0] - lo[0] + 1 and lo[0] == 0:
                return {"word": "".join(np.base_repr(v, 36) for _, v in self.cells)}
        return {"cells": [[list(c), v] for c, v in self.cells]}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, partial_pattern)
            and other.size == self.size
            and other.cells == self.cells
        )

    def __hash__(self) -> int:
        return hash((self.size, self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __repr__(self) -> str:
        return f"partial_pattern({self.to_record()}, size={self.size})"


def square_coords(radius: int, dimension: int) -> Iterator[Coord]:
    """Coordinates of [-r;r]^d in lexicographic order.

    Args:
        radius (int): r
        dimension (int): d

    Returns:
        Iterator: coordinate tuples
    """
    return itertools.product(range(-radius, radius + 1), repeat=dimension)


def words_as_strings(words: Iterable[Sequence[int]]) -> List[str]:
    """Sorted digit strings of a collection of words.

    Args:
        words (Iterable): words or letter tuples

    Returns:
        List[str]: lexicographically sorted strings
    """
    return sorted("".join(np.base_repr(int(c), 36) for c in w) for w in words)
