"""Configurations given by a total cell rule."""
from typing import Callable, Sequence, Tuple, Union

import numpy as np

from univshift.errors import OutOfWindow

Coord = Tuple[int, ...]


class configuration:
    """Configuration of Z^d given by a cell rule."""

    def __init__(
        self, size: int, dimension: int, cell: Callable[[Coord], int], name: str = ""
    ) -> None:
        """Configuration from a rule.

        Args:
            size (int): Alphabet size
            dimension (int): Dimension d
            cell (Callable): coordinate tuple to letter
            name (str): Display name
        """
        assert size >= 1 and dimension >= 1, "need a nonempty alphabet and d >= 1"
        self.size = size
        self.dimension = dimension
        self._cell = cell
        self.name = name

    def __call__(self, coord: Union[int, Coord]) -> int:
        if isinstance(coord, (int, np.integer)):
            coord = (int(coord),)
        return int(self._cell(tuple(coord)))

    def window(self, start: int, length: int) -> np.ndarray:
        """Letters of a 1-D configuration on start..start+length-1.

        Args:
            start (int): First coordinate
            length (int): Number of cells

        Returns:
            np.ndarray: letters
        """
        assert self.dimension == 1, "window needs a 1-D configuration"
        return np.array([self((start + i,)) for i in range(length)], dtype=np.int64)


def periodic(letters: Sequence[int], size: int, origin: int = 0) -> configuration:
    """1-D periodic configuration repeating a word.

    Args:
        letters (Sequence[int]): One period
        size (int): Alphabet size
        origin (int): Index of the period letter placed at coordinate 0

    Returns:
        configuration: periodic configuration
    """
    period = [int(a) for a in letters]
    n = len(period)
    return configuration(
        size, 1, lambda c: period[(c[0] + origin) % n], f"periodic:{period}"
    )


def periodic_2d(rows: Sequence[Sequence[int]], size: int) -> configuration:
    """2-D doubly periodic configuration; cell (x, y) = rows[y][x].

    Args:
        rows (Sequence): Period block, one row per y
        size (int): Alphabet size

    Returns:
        configuration: periodic configuration
    """
    block = [[int(a) for a in row] for row in rows]
    h, w = len(block), len(block[0])
    return configuration(size, 2, lambda c: block[c[1] % h][c[0] % w], "periodic_2d")


def window_configuration(
    letters: Union[Sequence[int], np.ndarray], size: int, origin: Coord = None
) -> configuration:
    """Finite window seen as a partial configuration.

    Cells outside the window raise OutOfWindow.

    Args:
        letters (Sequence, np.ndarray): Window, indexed [x0, x1, ...]
        size (int): Alphabet size
        origin (Tuple): Array index of coordinate 0, default the center

    Returns:
        configuration: window backed configuration
    """
    arr = np.asarray(letters)
    if origin is None:
        origin = tuple(side // 2 for side in arr.shape)

    def cell(c: Coord) -> int:
        pos = tuple(a + o for a, o in zip(c, origin))  # type: ignore
        if any(p < 0 or p >= side for p, side in zip(pos, arr.shape)):
            raise OutOfWindow(f"cell {c} outside the window")
        return int(arr[pos])

    return configuration(size, arr.ndim, cell, "window")
