"""Oracle machines: resumable computations asking an oracle questions."""
import logging
from abc import ABCMeta, abstractmethod
from typing import Any, Callable, Dict, Generator, List, NamedTuple, Union

from univshift.errors import BudgetExhausted

log = logging.getLogger(__name__)

# A program yields query indices, receives answers and returns its output
Program = Generator[int, int, int]
Oracle = Union[Callable[[int], int], Any]


class query(NamedTuple):
    """Machine asks the oracle for one value."""

    index: int


class halt(NamedTuple):
    """Machine stops with an output."""

    value: int


class oracle_machine(metaclass=ABCMeta):
    """Deterministic oracle machine.

    A machine is an immutable description. Each run owns the generator
    returned by ``program``, so runs never share state.
    """

    name = "machine"
    # Query indices do not depend on oracle answers
    oblivious = False

    @property
    def params(self) -> Dict[str, Any]:
        """Parameters describing the machine.

        Returns:
            Dict: parameters
        """
        return {}

    @abstractmethod
    def program(self, n: int) -> Program:
        """Computation on input n.

        Args:
            n (int): input

        Raises:
            NotImplementedError: If child classes do not implement method
        """
        raise NotImplementedError  # pragma: no cover

    def step(self, n: int, answers: List[int]) -> Union[query, halt]:
        """Next action after a given list of answers.

        Replays the program from the start, so the action depends only on
        (n, answers).

        Args:
            n (int): input
            answers (List[int]): oracle answers so far

        Returns:
            query, halt: next action

        Raises:
            Exception: If more answers are given than queries were asked
        """
        prog = self.program(n)
        consumed = 0
        try:
            action = next(prog)
            for a in answers:
                consumed += 1
                action = prog.send(a)
        except StopIteration as stop:
            if consumed < len(answers):
                raise Exception("more answers than queries")
            return halt(int(stop.value))
        return query(int(action))

    def footprint(self, n: int) -> List[int]:
        """Query indices of an oblivious machine on input n.

        Args:
            n (int): input

        Returns:
            List[int]: indices queried, in order

        Raises:
            Exception: If the machine is not oblivious
        """
        if not self.oblivious:
            raise Exception(f"{self.name} is not oblivious")
        queries: List[int] = []
        prog = self.program(n)
        try:
            idx = next(prog)
            while True:
                queries.append(idx)
                idx = prog.send(0)
        except StopIteration:
            return queries

    def describe(self) -> Dict[str, Any]:
        """Name and parameters.

        Returns:
            Dict: description
        """
        return {"name": self.name, "params": self.params}

    def __repr__(self) -> str:
        return f"{self.name}({self.params})"


def _ask(oracle: Oracle, index: int) -> int:
    if hasattr(oracle, "__getitem__"):
        return int(oracle[index])
    return int(oracle(index))


def run_operator(
    m: oracle_machine, oracle: Oracle, n: int, step_budget: int = 10_000
) -> int:
    """Run a machine on an oracle until it halts.

    Args:
        m (oracle_machine): machine
        oracle (nat_stream, Callable): answers queries by index
        n (int): input
        step_budget (int): largest number of queries allowed

    Returns:
        int: output

    Raises:
        BudgetExhausted: If the machine asks more than step_budget queries
    """
    assert step_budget >= 1, "step_budget must be at least 1"
    prog = m.program(n)
    steps = 0
    try:
        idx = next(prog)
        while True:
            steps += 1
            if steps > step_budget:
                prog.close()
                raise BudgetExhausted(
                    f"{m.name} on input {n} exceeded {step_budget} queries"
                )
            idx = prog.send(_ask(oracle, idx))
    except StopIteration as stop:
        return int(stop.value)


class composed(oracle_machine):
    """f after g: every query of f is answered by running g."""

    name = "compose"

    def __init__(self, f: oracle_machine, g: oracle_machine) -> None:
        """Composition f o g.

        Args:
            f (oracle_machine): outer machine
            g (oracle_machine): inner machine, runs on the shared oracle
        """
        self.f = f
        self.g = g
        self.oblivious = f.oblivious and g.oblivious

    @property
    def params(self) -> Dict[str, Any]:
        """Descriptions of both machines."""
        return {"f": self.f.describe(), "g": self.g.describe()}

    def program(self, n: int) -> Program:
        """Run f, serving each query with a full run of g.

        Args:
            n (int): input

        Returns:
            int: output of f

        Yields:
            int: queries of g to the shared oracle
        """
        outer = self.f.program(n)
        try:
            idx = next(outer)
            while True:
                answer = yield from self.g.program(idx)
                idx = outer.send(answer)
        except StopIteration as stop:
            return stop.value


def compose(f: oracle_machine, g: oracle_machine) -> oracle_machine:
    """Composition f o g of two machines.

    Args:
        f (oracle_machine): outer machine
        g (oracle_machine): inner machine

    Returns:
        oracle_machine: composition
    """
    return composed(f, g)
