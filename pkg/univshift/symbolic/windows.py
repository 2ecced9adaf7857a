"""Sources of locally admissible windows and finite window oracles."""
import logging
from abc import ABCMeta, abstractmethod
from typing import Dict, List, Sequence, Tuple

import numpy as np

from univshift.codecs.nat import z_coords
from univshift.errors import OutOfDomainQuery
from univshift.operators.machine import oracle_machine, run_operator
from univshift.symbolic.subshift import subshift
from univshift.symbolic.words import DEFAULT_CAP, admissible_blocks, find_admissible

log = logging.getLogger(__name__)


class window_source(metaclass=ABCMeta):
    """Supplies the centered windows [-i;i]^d that an algorithm quantifies over."""

    # True when every locally admissible window is supplied
    exhaustive = False

    def __init__(self, spec: subshift) -> None:
        """Window source of a subshift.

        Args:
            spec (subshift): subshift whose windows are supplied
        """
        self.spec = spec
        self._cache: Dict[Tuple[int, int], np.ndarray] = {}

    def sides(self, radius: int) -> Tuple[int, ...]:
        """Side lengths of the window of a radius.

        Args:
            radius (int): i

        Returns:
            Tuple: (2i+1,) * d
        """
        return (2 * radius + 1,) * self.spec.dimension

    def windows(self, radius: int, depth: int) -> np.ndarray:
        """Windows on [-radius;radius]^d avoiding the first depth patterns.

        Args:
            radius (int): i
            depth (int): t

        Returns:
            np.ndarray: rows of cells, row-major over the window
        """
        key = (radius, depth)
        if key not in self._cache:
            self._cache[key] = self._build(radius, depth)
        return self._cache[key]

    @abstractmethod
    def _build(self, radius: int, depth: int) -> np.ndarray:
        """Build the window table.

        Args:
            radius (int): i
            depth (int): t

        Raises:
            NotImplementedError: If child classes do not implement method
        """
        raise NotImplementedError  # pragma: no cover

    def exists(self, radius: int, depth: int) -> bool:
        """Whether any window survives.

        Args:
            radius (int): i
            depth (int): t

        Returns:
            bool: True if at least one window exists
        """
        return len(self.windows(radius, depth)) > 0

    def images(
        self,
        m: oracle_machine,
        radius: int,
        depth: int,
        inputs: Sequence[int],
        step_budget: int = 10_000,
    ) -> np.ndarray:
        """Outputs of an operator run on every window as a finite oracle.

        Args:
            m (oracle_machine): operator
            radius (int): i
            depth (int): t
            inputs (Sequence[int]): operator inputs
            step_budget (int): queries allowed per run

        Returns:
            np.ndarray: windows x inputs table of outputs

        Raises:
            OutOfDomainQuery: If a run reads outside its window
        """
        table = self.windows(radius, depth)
        sides = self.sides(radius)
        out = np.zeros((len(table), len(inputs)), dtype=np.int64)
        for i, row in enumerate(table):
            oracle = window_oracle(row, sides, self.spec.size)
            for q, n in enumerate(inputs):
                out[i, q] = run_operator(m, oracle, n, step_budget)
        return out


class local_windows(window_source):
    """Exact local admissibility by exhaustive enumeration."""

    exhaustive = True

    def __init__(self, spec: subshift, cap: int = DEFAULT_CAP) -> None:
        """Exhaustive window source.

        Args:
            spec (subshift): subshift
            cap (int): enumeration cap
        """
        super().__init__(spec)
        self.cap = cap

    def _build(self, radius: int, depth: int) -> np.ndarray:
        return admissible_blocks(self.spec, self.sides(radius), depth, self.cap)

    def exists(self, radius: int, depth: int) -> bool:
        """Whether any window survives, by depth first search in 1-D.

        Args:
            radius (int): i
            depth (int): t

        Returns:
            bool: True if at least one window exists
        """
        if self.spec.dimension == 1:
            return find_admissible(self.spec, 2 * radius + 1, depth) is not None
        return super().exists(radius, depth)


class window_oracle:
    """Configuration stream backed by one finite centered window.

    Header indices 0 and 1 give the alphabet size and dimension. Cell
    queries outside the window raise OutOfDomainQuery.
    """

    def __init__(self, cells: np.ndarray, sides: Tuple[int, ...], size: int) -> None:
        """Oracle over a window.

        Args:
            cells (np.ndarray): flat row-major cells
            sides (Tuple): window side lengths
            size (int): alphabet size announced in the header
        """
        self.arr = np.asarray(cells).reshape(sides)
        self.sides = sides
        self.size = size
        self.center = tuple(side // 2 for side in sides)
        self.max_cell = 0
        self.queried: List[Tuple[int, ...]] = []

    def __call__(self, index: int) -> int:
        if index == 0:
            return self.size
        if index == 1:
            return len(self.sides)
        coord = z_coords(index - 2, len(self.sides))
        reach = max(abs(c) for c in coord)
        self.max_cell = max(self.max_cell, reach)
        pos = tuple(c + o for c, o in zip(coord, self.center))
        if any(p < 0 or p >= side for p, side in zip(pos, self.sides)):
            raise OutOfDomainQuery(f"cell {coord} outside window {self.sides}")
        self.queried.append(coord)
        return int(self.arr[pos])
