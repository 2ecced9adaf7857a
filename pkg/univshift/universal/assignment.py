"""Assignment of target subshifts to skeleton layers."""
import itertools
import logging
import threading
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Union

from univshift.symbolic.subshift import subshift

log = logging.getLogger(__name__)

Targets = Union[Sequence[subshift], Callable[[int], Optional[subshift]]]


class assignment:
    """Layer to target index map, computed lazily.

    Target indices are 1-based. A pointer starts at 1; layer n takes the
    pointed target when 2^n letters suffice for its alphabet and the
    pointer advances, otherwise layer n recodes the previous target, or
    stays unassigned before any target fits.
    """

    def __init__(self, targets: Targets) -> None:
        """Assignment over a finite list or an indexed stream of targets.

        Args:
            targets (Sequence, Callable): subshifts, or index (from 1) to
                subshift, None past the end of a finite stream
        """
        if callable(targets):
            self._target: Callable[[int], Optional[subshift]] = targets
            self.count: Optional[int] = None
        else:
            items = list(targets)
            self._target = lambda i: items[i - 1] if 1 <= i <= len(items) else None
            self.count = len(items)
        self._layers: List[Optional[int]] = []
        self.pointer_history: List[int] = []
        self._pointer = 1
        self._lock = threading.Lock()

    def target(self, i: int) -> subshift:
        """Target of an index.

        Args:
            i (int): target index, from 1

        Returns:
            subshift: target

        Raises:
            KeyError: If there is no such target
        """
        found = self._target(i)
        if found is None:
            raise KeyError(f"no target {i}")
        return found

    def _extend(self, n: int) -> None:
        with self._lock:
            while len(self._layers) < n:
                layer = len(self._layers) + 1
                i = self._pointer
                self.pointer_history.append(i)
                current = self._target(i)
                if current is not None and 2 ** layer >= current.size:
                    self._layers.append(i)
                    self._pointer += 1
                    log.debug("layer %d codes target %d (%s)", layer, i, current.name)
                else:
                    self._layers.append(i - 1 if i > 1 else None)

    def __call__(self, n: int) -> Optional[int]:
        """Target index of layer n.

        Args:
            n (int): layer, from 1

        Returns:
            int: target index, None for an unassigned layer
        """
        assert n >= 1, "layers start at 1"
        self._extend(n)
        return self._layers[n - 1]

    def spec_of(self, n: int) -> Optional[subshift]:
        """Target coded on layer n.

        Args:
            n (int): layer

        Returns:
            subshift: target, None for an unassigned layer
        """
        i = self(n)
        return None if i is None else self.target(i)

    def layers(self) -> Iterator[int]:
        """Assigned layers in increasing order; infinite once a target fits.

        Returns:
            Iterator[int]: layers
        """
        return (n for n in itertools.count(1) if self(n) is not None)

    def first_layer(self, i: int) -> int:
        """Layer that first codes a target.

        Args:
            i (int): target index

        Returns:
            int: smallest n with assignment n -> i
        """
        for n in itertools.count(1):
            if self(n) == i:
                return n
        return 0  # pragma: no cover

    def table(self, max_layer: int) -> Dict[int, Optional[int]]:
        """Assignment of layers 1..max_layer.

        Args:
            max_layer (int): last layer

        Returns:
            Dict: layer to target index or None
        """
        return {n: self(n) for n in range(1, max_layer + 1)}


class fixed_assignment(assignment):
    """Explicit layer to target map; other layers are unassigned."""

    def __init__(self, targets: Dict[int, subshift]) -> None:
        """Assignment naming a target per layer.

        Args:
            targets (Dict[int, subshift]): layer to target
        """
        self._by_layer = dict(sorted(targets.items()))
        order = list(self._by_layer)
        super().__init__([self._by_layer[n] for n in order])
        self._layers = [
            order.index(n) + 1 if n in self._by_layer else None
            for n in range(1, max(order + [0]) + 1)
        ]

    def _extend(self, n: int) -> None:
        while len(self._layers) < n:
            self._layers.append(None)

    def layers(self) -> Iterator[int]:
        """Layers with a target.

        Returns:
            Iterator[int]: layers in increasing order
        """
        return iter(self._by_layer)


def assign_layers(targets: Targets) -> assignment:
    """Assign target subshifts to layers.

    Args:
        targets (Sequence, Callable): target subshifts, or an indexed stream

    Returns:
        assignment: lazy assignment
    """
    return assignment(targets)
