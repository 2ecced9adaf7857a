"""Streams of naturals and the codings built on them."""
import itertools
import logging
import math
import threading
from collections import abc
from typing import Any, Callable, Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from univshift.errors import EmptySet, ZeroAlphabet
from univshift.symbolic.configuration import configuration

log = logging.getLogger(__name__)


class nat_stream:
    """Total memoized function from N to N.

    Access is idempotent: the rule is evaluated once per index and the
    value is kept. The rule must be deterministic.
    """

    def __init__(
        self,
        rule: Callable[[int], int],
        name: str = "stream",
        params: Dict[str, Any] = None,
    ) -> None:
        """Stream from an index rule.

        Args:
            rule (Callable): index to natural
            name (str): Generator name used in serialization
            params (Dict): Generator parameters used in serialization
        """
        self._rule = rule
        self._memo: Dict[int, int] = {}
        self._lock = threading.Lock()
        self.name = name
        self.params = params or {}

    def __getitem__(self, index: int) -> int:
        if index < 0:
            raise IndexError(f"stream index {index} is negative")
        try:
            return self._memo[index]
        except KeyError:
            pass
        value = int(self._rule(index))
        if value < 0:
            raise Exception(f"stream {self.name} produced negative value {value}")
        with self._lock:
            return self._memo.setdefault(index, value)

    def __call__(self, index: int) -> int:
        return self[index]

    def prefix(self, count: int) -> List[int]:
        """First values.

        Args:
            count (int): Number of values

        Returns:
            List[int]: stream(0..count-1)
        """
        return [self[i] for i in range(count)]

    def to_json(self, count: int) -> Dict[str, Any]:
        """Serializable description: finite prefix plus generator.

        Args:
            count (int): Prefix length

        Returns:
            Dict: prefix, generator name and parameters
        """
        return {
            "prefix": self.prefix(count),
            "generator": self.name,
            "params": self.params,
        }

    @classmethod
    def from_values(cls, values: Sequence[int], pad: int = None) -> "nat_stream":
        """Stream from a finite prefix, padded with its last value or ``pad``.

        Args:
            values (Sequence[int]): Prefix
            pad (int): Value past the prefix, default the last value

        Returns:
            nat_stream: stream
        """
        vals = [int(v) for v in values]
        fill = vals[-1] if pad is None else pad
        return cls(
            lambda i: vals[i] if i < len(vals) else fill,
            "values",
            {"values": vals, "pad": fill},
        )

    @classmethod
    def constant(cls, value: int) -> "nat_stream":
        """Constant stream.

        Args:
            value (int): Value

        Returns:
            nat_stream: stream
        """
        return cls(lambda i: value, "constant", {"value": value})


def beta1(n: int) -> int:
    """Bijection N -> Z: 0, 1, -1, 2, -2, ...

    Args:
        n (int): natural

    Returns:
        int: integer
    """
    return (n + 1) // 2 if n % 2 else -(n // 2)


def beta1_inv(z: int) -> int:
    """Inverse of beta1.

    Args:
        z (int): integer

    Returns:
        int: natural
    """
    return 2 * z - 1 if z > 0 else -2 * z


def cantor_pair(a: int, b: int) -> int:
    """Cantor pairing (a+b)(a+b+1)/2 + b.

    Args:
        a (int): first natural
        b (int): second natural

    Returns:
        int: pair code
    """
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(n: int) -> Tuple[int, int]:
    """Inverse of cantor_pair.

    Args:
        n (int): pair code

    Returns:
        Tuple: (a, b)
    """
    w = (math.isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def z_coords(n: int, d: int) -> Tuple[int, ...]:
    """Coordinates of Z^d with index n.

    Pairing is right nested: n = pair(n1, pair(n2, ...)).

    Args:
        n (int): index
        d (int): dimension

    Returns:
        Tuple: coordinates
    """
    assert d >= 1 and n >= 0, "need d >= 1 and n >= 0"
    parts = []
    for _ in range(d - 1):
        a, n = cantor_unpair(n)
        parts.append(a)
    parts.append(n)
    return tuple(beta1(p) for p in parts)


def z_index(v: Union[int, Sequence[int]]) -> int:
    """Index of a point of Z^d; inverse of z_coords.

    Args:
        v (int, Sequence[int]): point

    Returns:
        int: index
    """
    if isinstance(v, int):
        v = (v,)
    parts = [beta1_inv(int(c)) for c in v]
    n = parts[-1]
    for a in reversed(parts[:-1]):
        n = cantor_pair(a, n)
    return n


def encode_config(c: configuration) -> nat_stream:
    """Stream coding of a configuration: size, dimension, then cells.

    Args:
        c (configuration): total configuration

    Returns:
        nat_stream: (s, d, c(z_coords(0)), c(z_coords(1)), ...)
    """
    s, d = c.size, c.dimension

    def rule(i: int) -> int:
        if i == 0:
            return s
        if i == 1:
            return d
        return c(z_coords(i - 2, d))

    return nat_stream(rule, "config", {"config": c.name, "alphabet": s, "dimension": d})


def decode_stream(w: nat_stream) -> configuration:
    """Configuration coded by a stream; cells are reduced mod w(0).

    Args:
        w (nat_stream): coding stream

    Returns:
        configuration: decoded configuration

    Raises:
        ZeroAlphabet: If w(0) is 0
    """
    s = w[0]
    if s == 0:
        raise ZeroAlphabet("stream announces an empty alphabet")
    d = max(w[1], 1)
    return configuration(s, d, lambda v: w[z_index(v) + 2] % s, "decoded")


def m_join(a: nat_stream, b: nat_stream) -> nat_stream:
    """Interleave: x(2n) = a(n), x(2n+1) = b(n).

    Args:
        a (nat_stream): even positions
        b (nat_stream): odd positions

    Returns:
        nat_stream: join
    """
    return nat_stream(
        lambda i: b[i // 2] if i % 2 else a[i // 2],
        "join",
        {"left": a.name, "right": b.name},
    )


def m_unjoin(x: nat_stream) -> Tuple[nat_stream, nat_stream]:
    """Split a join back into its two streams.

    Args:
        x (nat_stream): joined stream

    Returns:
        Tuple: (even part, odd part)
    """
    return (
        nat_stream(lambda i: x[2 * i], "even", {"of": x.name}),
        nat_stream(lambda i: x[2 * i + 1], "odd", {"of": x.name}),
    )


def m_prepend(i: int, a: nat_stream) -> nat_stream:
    """Stream i, a(0), a(1), ...

    Args:
        i (int): first value
        a (nat_stream): tail

    Returns:
        nat_stream: prepended stream
    """
    return nat_stream(
        lambda n: i if n == 0 else a[n - 1], "prepend", {"head": i, "tail": a.name}
    )


def m_meet(a: nat_stream, b: nat_stream, side: int) -> nat_stream:
    """Member of the meet 0+A union 1+B chosen by side.

    Args:
        a (nat_stream): member of A
        b (nat_stream): member of B
        side (int): 0 selects a, 1 selects b

    Returns:
        nat_stream: prepend(side, chosen stream)
    """
    assert side in (0, 1), "side must be 0 or 1"
    return m_prepend(side, a if side == 0 else b)


def set_enumerator(elements: Union[Sequence[int], Iterable[int]]) -> nat_stream:
    """Stream whose set of values is the given set.

    Finite lists cycle. Generators are pulled lazily; if one ends after L
    elements the stream cycles over those L.

    Args:
        elements (Sequence, Iterable): nonempty list or generator

    Returns:
        nat_stream: enumeration

    Raises:
        EmptySet: If no element is available
    """
    if isinstance(elements, abc.Sequence):
        values = [int(e) for e in elements]
        if not values:
            raise EmptySet("the empty set has no canonical member")
        return nat_stream(
            lambda i: values[i % len(values)], "cycle", {"values": values}
        )

    source: Iterator[int] = iter(elements)
    seen: List[int] = []
    done = [False]
    lock = threading.Lock()

    def pull(count: int) -> None:
        with lock:
            while not done[0] and len(seen) < count:
                try:
                    seen.append(int(next(source)))
                except StopIteration:
                    done[0] = True

    pull(1)
    if not seen:
        raise EmptySet("the empty set has no canonical member")

    def rule(i: int) -> int:
        pull(i + 1)
        return seen[i] if i < len(seen) else seen[i % len(seen)]

    return nat_stream(rule, "enumeration")


def gamma_bits(value: int) -> List[int]:
    """Self-delimiting binary code of a natural (Elias gamma of value+1).

    Args:
        value (int): natural

    Returns:
        List[int]: bits
    """
    n = value + 1
    body = [int(ch) for ch in bin(n)[2:]]
    return [0] * (len(body) - 1) + body


def gamma_read(bits: Callable[[int], int], start: int) -> Tuple[int, int]:
    """Read one gamma coded natural from a bit source.

    Args:
        bits (Callable): bit at a position
        start (int): position of the first bit

    Returns:
        Tuple: (value, position after the code)
    """
    zeros = 0
    pos = start
    while bits(pos) == 0:
        zeros += 1
        pos += 1
    n = 0
    for _ in range(zeros + 1):
        n = 2 * n + bits(pos)
        pos += 1
    return n - 1, pos


def serialize_bits(w: nat_stream) -> nat_stream:
    """Bit stream concatenating the gamma codes of every value of w.

    Args:
        w (nat_stream): stream of naturals

    Returns:
        nat_stream: bit stream
    """
    bits: List[int] = []
    counter = itertools.count()
    lock = threading.Lock()

    def rule(i: int) -> int:
        with lock:
            while len(bits) <= i:
                bits.extend(gamma_bits(w[next(counter)]))
            return bits[i]

    return nat_stream(rule, "gamma", {"of": w.name})
