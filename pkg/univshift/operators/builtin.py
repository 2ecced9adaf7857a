"""Built-in oracle machines."""
import itertools
from typing import Any, Dict, Sequence, Tuple, Union

from univshift.codecs.nat import z_coords, z_index
from univshift.operators.machine import Program, oracle_machine
from univshift.symbolic.block_code import block_code


class identity_machine(oracle_machine):
    """Query input n and output the answer."""

    name = "identity"
    oblivious = True

    def program(self, n: int) -> Program:
        """Copy oracle value n.

        Args:
            n (int): input

        Returns:
            int: oracle value at n

        Yields:
            int: the single query n
        """
        answer = yield n
        return answer


class header_machine(oracle_machine):
    """Output the input without asking anything."""

    name = "header"
    oblivious = True

    def program(self, n: int) -> Program:
        """Halt with n.

        Args:
            n (int): input

        Returns:
            int: n

        Yields:
            int: nothing, the program never queries
        """
        return n
        yield  # pragma: no cover


class diverging_machine(oracle_machine):
    """Query index 0 forever; exercises step budgets."""

    name = "diverge"

    def program(self, n: int) -> Program:
        """Never halt.

        Args:
            n (int): input

        Yields:
            int: index 0, forever
        """
        while True:
            yield 0


class block_subsample(oracle_machine):
    """Block code followed by subsampling, acting on configuration streams.

    Input 0 outputs the output alphabet size and input 1 the dimension;
    neither queries. Input j+2 reads the cells around stride * z_coords(j)
    within the code radius and outputs the rule value.
    """

    name = "block_subsample"
    oblivious = True

    def __init__(
        self, code: block_code, strides: Union[int, Sequence[int]], name: str = None
    ) -> None:
        """Operator from a code and a stride per axis.

        Args:
            code (block_code): local rule
            strides (int, Sequence[int]): subsampling stride, one per axis
            name (str): Display name, default from the code

        Raises:
            Exception: If strides and code dimension disagree
        """
        if isinstance(strides, int):
            strides = (strides,) * code.dimension
        self.strides: Tuple[int, ...] = tuple(int(m) for m in strides)
        if len(self.strides) != code.dimension or min(self.strides) < 1:
            raise Exception(
                f"strides {self.strides} do not fit a code"
                f" of dimension {code.dimension}"
            )
        self.code = code
        self.name = name or f"{code.name}/{'x'.join(map(str, self.strides))}"
        self._offsets = list(
            itertools.product(*[range(-r, r + 1) for r in code.radii])
        )

    @property
    def params(self) -> Dict[str, Any]:
        """Code name, radii and strides."""
        return {
            "code": self.code.name,
            "radii": self.code.radii,
            "strides": self.strides,
        }

    def cells(self, n: int) -> Sequence[Tuple[int, ...]]:
        """Input cells read on input n.

        Args:
            n (int): input, at least 2

        Returns:
            Sequence: coordinates in lexicographic window order
        """
        d = self.code.dimension
        v = z_coords(n - 2, d)
        center = [m * c for m, c in zip(self.strides, v)]
        return [tuple(c + o for c, o in zip(center, off)) for off in self._offsets]

    def program(self, n: int) -> Program:
        """Compute one output cell.

        Args:
            n (int): input

        Returns:
            int: header value or rule value

        Yields:
            int: stream indices of the window cells
        """
        if n == 0:
            return self.code.output_alphabet.size
        if n == 1:
            return self.code.dimension
        size = self.code.input_alphabet.size
        letters = []
        for cell in self.cells(n):
            answer = yield z_index(cell) + 2
            letters.append(answer % size)
        return self.code(letters)


def block_subsample_operator(code: block_code, m: int) -> block_subsample:
    """Operator of a 1-D code followed by subsampling at stride m.

    Args:
        code (block_code): 1-D block code
        m (int): stride

    Returns:
        block_subsample: operator on configuration streams
    """
    assert code.dimension == 1, "block_subsample_operator takes a 1-D code"
    return block_subsample(code, (m,))


def rowwise_operator(code: block_code, m: int) -> block_subsample:
    """2-D operator applying a 1-D code along every row.

    Args:
        code (block_code): 1-D block code of radius r
        m (int): horizontal stride

    Returns:
        block_subsample: operator with stride (m, 1) and radius (r, 0)
    """
    assert code.dimension == 1, "rowwise_operator takes a 1-D code"
    size = code.input_alphabet.size
    out = code.output_alphabet.size
    flat = block_code(size, out, (code.radius, 0), code, code.name)
    return block_subsample(flat, (m, 1), f"rows({code.name})/{m}")
