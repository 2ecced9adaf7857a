"""Indexed families of oracle machines."""
import itertools
from typing import Callable, Dict, Iterable, Iterator, List, Optional

from univshift.operators.builtin import (
    block_subsample_operator,
    diverging_machine,
    header_machine,
    identity_machine,
)
from univshift.operators.machine import oracle_machine
from univshift.symbolic.block_code import block_code


class operator_registry:
    """Operators indexed by naturals.

    The index set may be infinite; machines are then built on demand by a
    factory and kept once built.
    """

    def __init__(
        self,
        machines: Optional[Dict[int, oracle_machine]] = None,
        factory: Optional[Callable[[int], oracle_machine]] = None,
        indices: Optional[Callable[[], Iterable[int]]] = None,
    ) -> None:
        """Registry from explicit machines or a factory.

        Args:
            machines (Dict): index to machine
            factory (Callable): builds the machine of an index
            indices (Callable): returns the index set in increasing order,
                required with a factory
        """
        assert (machines is None) != (factory is None), "give machines or a factory"
        self._machines: Dict[int, oracle_machine] = dict(machines or {})
        self._factory = factory
        self._indices = indices

    @classmethod
    def from_list(cls, machines: List[oracle_machine]) -> "operator_registry":
        """Registry indexing machines by position.

        Args:
            machines (List[oracle_machine]): machines

        Returns:
            operator_registry: registry
        """
        return cls(dict(enumerate(machines)))

    def indices(self) -> Iterator[int]:
        """Index set in increasing order, possibly infinite.

        Returns:
            Iterator[int]: indices
        """
        if self._factory is None:
            return iter(sorted(self._machines))
        assert self._indices is not None, "factory registry needs an index set"
        return iter(self._indices())

    def first(self, count: int) -> List[int]:
        """First indices.

        Args:
            count (int): Number of indices

        Returns:
            List[int]: indices
        """
        return list(itertools.islice(self.indices(), count))

    def __getitem__(self, index: int) -> oracle_machine:
        if index not in self._machines:
            if self._factory is None:
                raise KeyError(f"no operator registered under {index}")
            self._machines[index] = self._factory(index)
        return self._machines[index]

    def __contains__(self, index: int) -> bool:
        if self._factory is None:
            return index in self._machines
        for i in self.indices():
            if i == index:
                return True
            if i > index:
                return False
        return False  # pragma: no cover


def builtin_operator(name: str) -> oracle_machine:
    """Built-in operator from a registry name.

    Names: ``identity``, ``header``, ``diverge``, ``xor``, ``relabel``
    (binary swap) and ``subsample:<m>[:<s>]``. Layer decoders ``L<n>`` need
    skeleton parameters and are resolved by ``univshift.layers.decode``.

    Args:
        name (str): operator name

    Returns:
        oracle_machine: operator

    Raises:
        Exception: If the name is unknown
    """
    if name == "identity":
        return identity_machine()
    if name == "header":
        return header_machine()
    if name == "diverge":
        return diverging_machine()
    if name == "xor":
        return block_subsample_operator(block_code.xor(), 1)
    if name == "relabel":
        return block_subsample_operator(block_code.relabel([1, 0]), 1)
    if name.startswith("subsample:"):
        parts = name.split(":")
        size = int(parts[2]) if len(parts) > 2 else 2
        return block_subsample_operator(block_code.identity(size), int(parts[1]))
    raise Exception(f"Unknown operator {name}")
