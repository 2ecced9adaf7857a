"""Binary streams packed as uniform skeleton layers, and their unpacking.

A bit stream x is stored in the aligned skeleton with every real coding
cell of layer n+1 holding C_{x(n)}. Serializing the coding stream of a
configuration into bits gives a one dimensional subshift K_S from which
the unpacking machine recovers the configurations of any subshift S.
"""
import itertools
import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from univshift.codecs.nat import gamma_read, nat_stream, z_coords, z_index
from univshift.errors import NotBit
from univshift.layers.skeleton import C0, LB, RB, SIGMA, role, skeleton
from univshift.operators.machine import Program, compose, oracle_machine
from univshift.symbolic.configuration import configuration
from univshift.symbolic.subshift import pattern_stream, subshift
from univshift.types import partial_pattern
from univshift.universal.builder import dovetail

log = logging.getLogger(__name__)

# levels followed before a cell is left to the fill letter
MAX_LEVELS = 64
# consecutive letters read to fix the phase of a level
READ_SPAN = 13


def _bit(x: Union[nat_stream, Sequence[int]], n: int) -> int:
    value = int(x[n])
    if value not in (0, 1):
        raise NotBit(f"x({n}) = {value} is not a bit")
    return value


def pack_binary(params: skeleton, x: Union[nat_stream, Sequence[int]]) -> configuration:
    """Aligned skeleton configuration whose layer n+1 holds C_{x(n)}.

    Args:
        params (skeleton): skeleton parameters
        x (nat_stream, Sequence[int]): bit stream

    Returns:
        configuration: configuration over the skeleton alphabet

    Raises:
        NotBit: If a read value of x is not a bit
    """
    P, k = params.period, params.k

    def cell(coord: Tuple[int, ...]) -> int:
        cur = coord[0]
        for n in range(MAX_LEVELS):
            s = cur % P
            if s == 0:
                return LB
            if s <= k:
                return C0 + _bit(x, n)
            if s == k + 1:
                return RB
            cur //= P
        return C0

    return configuration(SIGMA, 1, cell, "packed")


def uniformity_stream(params: skeleton) -> pattern_stream:
    """Patterns forcing every layer to hold one letter in all its coding cells.

    For layer n, the first real coding cell of a meta coding cell may not
    differ from any other real cell of it, nor from the first cell of the
    next one. Layers are dovetailed.

    Args:
        params (skeleton): skeleton parameters

    Returns:
        pattern_stream: stream over the skeleton alphabet
    """

    def layer(n: int) -> pattern_stream:
        def source() -> Iterator[partial_pattern]:
            cells = (
                p
                for q in range(1, params.k + 1)
                for p in params.real_cells(n - 1, q)
            )
            first = next(cells)
            for other in itertools.chain(cells, [first + params.geometry(n).m]):
                for a, b in ((0, 1), (1, 0)):
                    pinned = params.anchors(n)
                    pinned[first] = C0 + a
                    pinned[other] = C0 + b
                    cells = {(p,): v for p, v in pinned.items()}
                    yield partial_pattern(cells, SIGMA, 1)

        return pattern_stream(source, f"uniform{n}")

    streams: Dict[int, pattern_stream] = {}

    def layer_stream(n: int) -> pattern_stream:
        if n not in streams:
            streams[n] = layer(n)
        return streams[n]

    return dovetail(pattern_stream([], "none"), layer_stream, name="uniformity")


def packed_spec(params: skeleton) -> subshift:
    """Skeleton whose layers are uniform.

    Args:
        params (skeleton): skeleton parameters

    Returns:
        subshift: K, the image of pack_binary
    """
    uniform = uniformity_stream(params)
    stream = dovetail(
        params.forbidden_stream(), lambda n: uniform if n == 1 else None, 1, "packed"
    )
    return subshift(SIGMA, 1, stream, name=f"packed(k={params.k})")


class unpack_operator(oracle_machine):
    """Psi: on input i, the bit held by layer i+1.

    The machine fixes the phase of levels 1..i+1 one after the other by
    reading READ_SPAN consecutive letters of each level through one real
    cell per letter, then reads one coding cell of layer i+1.
    """

    name = "unpack"

    def __init__(self, params: skeleton) -> None:
        """Unpacking machine.

        Args:
            params (skeleton): skeleton parameters
        """
        self.skeleton = params

    @property
    def params(self) -> Dict[str, Any]:
        """Skeleton k."""
        return {"k": self.skeleton.k}

    def program(self, i: int) -> Program:
        """Read the bit of layer i+1.

        Args:
            i (int): input

        Returns:
            int: the bit, 0 when the input is not a packed configuration

        Yields:
            int: stream indices of the cells read
        """
        sk = self.skeleton
        P, k = sk.period, sk.k
        phases: List[int] = []

        def rep(level: int, q: int) -> int:
            for j in range(level, 0, -1):
                q = q * P - phases[j - 1] + k + 2
            return q

        half = READ_SPAN // 2
        for level in range(1, i + 2):
            letters = []
            for q in range(-half, READ_SPAN - half):
                answer = yield z_index(rep(level - 1, q)) + 2
                letters.append(role(answer % SIGMA))
            phase = sk.reading_phase(letters)
            if phase is None:
                return 0
            phases.append((phase + half) % P)
        answer = yield z_index(rep(i, (1 - phases[i]) % P)) + 2
        bit = answer % SIGMA - C0
        return bit if bit in (0, 1) else 0


class gamma_decoder(oracle_machine):
    """Coding stream of a configuration from its gamma serialized bits.

    Input n outputs the n-th natural of the serialized stream.
    """

    name = "gamma"

    def program(self, n: int) -> Program:
        """Decode naturals up to index n.

        Args:
            n (int): input

        Returns:
            int: the n-th natural

        Yields:
            int: bit positions read
        """
        pos = 0
        value = 0
        for _ in range(n + 1):
            zeros = 0
            while (yield pos) == 0:
                zeros += 1
                pos += 1
            value = 0
            for _ in range(zeros + 1):
                value = 2 * value + (yield pos)
                pos += 1
            value -= 1
        return value


def _decode_prefix(bits: Sequence[int]) -> List[int]:
    values = []
    pos = 0
    while True:
        try:
            value, pos = gamma_read(lambda j: bits[j], pos)
        except IndexError:
            return values
        values.append(value)


def _violates(spec: subshift, values: List[int], depth: int) -> bool:
    s, d = spec.size, spec.dimension
    if values and values[0] != s:
        return True
    if len(values) > 1 and values[1] != d:
        return True
    cells = values[2:]
    if any(v >= s for v in cells):
        return True
    known = {z_coords(j, d): v for j, v in enumerate(cells)}
    for p in spec.first(depth):
        pattern = list(p.cells)
        origin = pattern[0][0]
        for anchor in known:
            shift = tuple(a - o for a, o in zip(anchor, origin))
            if all(
                known.get(tuple(c + t for c, t in zip(coord, shift))) == letter
                for coord, letter in pattern
            ):
                return True
    return False


def serialization_violations(params: skeleton, spec: subshift) -> pattern_stream:
    """Minimal bad bit prefixes written as skeleton patterns.

    A prefix u of length L is bad when its decoded naturals give a wrong
    header, a letter outside the alphabet, or a partial configuration
    containing one of the first L forbidden patterns of the spec. Its
    pattern pins the phase anchors of layers 1..L and the first coding
    cell of layer j to C_{u_(j-1)}.

    Args:
        params (skeleton): skeleton parameters
        spec (subshift): S

    Returns:
        pattern_stream: lazy stream
    """

    def source() -> Iterator[partial_pattern]:
        good: List[Tuple[int, ...]] = [()]
        for length in itertools.count(1):
            extended = []
            for prefix in good:
                for b in (0, 1):
                    u = prefix + (b,)
                    if _violates(spec, _decode_prefix(u), length):
                        pinned = params.anchors(length)
                        for j, bit in enumerate(u, start=1):
                            pinned[params.group_cells(j, 0, 1)[0]] = C0 + bit
                        yield partial_pattern(
                            {(p,): v for p, v in pinned.items()}, SIGMA, 1
                        )
                    else:
                        extended.append(u)
            good = extended
            log.debug("%s: %d good prefixes of length %d", spec.name, len(good), length)

    return pattern_stream(source, f"serial({spec.name})")


def build_KS(
    spec: subshift, params: Optional[skeleton] = None
) -> Tuple[subshift, oracle_machine]:
    """One dimensional K_S and Psi_S with Psi_S(K_S) = S.

    Args:
        spec (subshift): S, any dimension
        params (skeleton): skeleton parameters, default k=4

    Returns:
        Tuple: (K_S over the skeleton alphabet, Psi_S)
    """
    params = params or skeleton()
    uniform = uniformity_stream(params)
    serial = serialization_violations(params, spec)
    extra = {1: uniform, 2: serial}
    stream = dovetail(params.forbidden_stream(), extra.get, 2, f"K({spec.name})")
    log.info("K_S built for %s", spec.name)
    return (
        subshift(SIGMA, 1, stream, name=f"K({spec.name})"),
        compose(gamma_decoder(), unpack_operator(params)),
    )
