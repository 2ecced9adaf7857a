"""Sliding block codes."""
import itertools
from typing import Callable, Dict, Mapping, Sequence, Tuple, Union

import numpy as np

from univshift.types import alphabet

Rule = Union[Callable[[Tuple[int, ...]], int], Mapping[Tuple[int, ...], int]]


class block_code:
    """Local rule of a sliding block code.

    The rule sees the input letters on [-r;r]^d in lexicographic order as a
    flat tuple. Small rules can be given as a table; large ones (the layer
    decoders) are given as a total function.
    """

    def __init__(
        self,
        input_size: int,
        output_size: int,
        radius: Union[int, Sequence[int]],
        rule: Rule,
        name: str = "block_code",
    ) -> None:
        """Block code from a rule.

        Args:
            input_size (int): Input alphabet size
            output_size (int): Output alphabet size
            radius (int, Sequence[int]): Radius, or one radius per axis
            rule (Callable, Mapping): Local rule
            name (str): Display name

        Raises:
            Exception: If a table rule is not total
        """
        self.input_alphabet = alphabet(input_size)
        self.output_alphabet = alphabet(output_size)
        if isinstance(radius, (int, np.integer)):
            radius = (int(radius),)
        self.radii: Tuple[int, ...] = tuple(int(r) for r in radius)
        assert all(r >= 0 for r in self.radii), "radius must be non-negative"
        self.name = name
        if isinstance(rule, Mapping):
            table: Dict[Tuple[int, ...], int] = dict(rule)
            cells = int(np.prod([2 * r + 1 for r in self.radii]))
            for window in itertools.product(range(input_size), repeat=cells):
                if window not in table:
                    raise Exception(f"rule of {name} undefined on {window}")
            self._rule: Callable[[Tuple[int, ...]], int] = table.__getitem__
        else:
            self._rule = rule

    @property
    def radius(self) -> int:
        """Radius along the first axis."""
        return self.radii[0]

    @property
    def dimension(self) -> int:
        """Dimension of the code."""
        return len(self.radii)

    @property
    def window_cells(self) -> int:
        """Number of cells the rule reads."""
        return int(np.prod([2 * r + 1 for r in self.radii]))

    def __call__(self, window: Sequence[int]) -> int:
        """Apply the local rule.

        Args:
            window (Sequence[int]): Letters on the window, lexicographic order

        Returns:
            int: output letter
        """
        return int(self._rule(tuple(int(c) for c in window)))

    @classmethod
    def identity(cls, size: int) -> "block_code":
        """Radius 0 identity code.

        Args:
            size (int): Alphabet size

        Returns:
            block_code: identity
        """
        return cls(size, size, 0, lambda w: w[0], "identity")

    @classmethod
    def relabel(cls, mapping: Sequence[int], output_size: int = None) -> "block_code":
        """Radius 0 letter-to-letter code.

        Args:
            mapping (Sequence[int]): image of each letter
            output_size (int): Output alphabet size, default max image + 1

        Returns:
            block_code: relabelling
        """
        mapping = [int(a) for a in mapping]
        size = output_size or max(mapping) + 1
        table = {(a,): b for a, b in enumerate(mapping)}
        return cls(len(mapping), size, 0, table, "relabel")

    @classmethod
    def xor(cls) -> "block_code":
        """Radius 1 binary code: left neighbour XOR right neighbour.

        Returns:
            block_code: xor code
        """
        return cls(2, 2, 1, lambda w: w[0] ^ w[2], "xor")

    @classmethod
    def constant(cls, size: int, radius: int, letter: int = 0) -> "block_code":
        """Code mapping every window to one letter.

        Args:
            size (int): Input alphabet size
            radius (int): Radius
            letter (int): Output letter

        Returns:
            block_code: constant code
        """
        return cls(size, letter + 1, radius, lambda w: letter, "constant")
