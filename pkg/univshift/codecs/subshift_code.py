"""Godel codes of subshifts: (s, d, pattern codes...)."""
import itertools
import logging
import threading
from typing import Iterator, List, Optional

from univshift.codecs.nat import nat_stream
from univshift.codecs.patterns import decode_pattern, encode_pattern, square_completions
from univshift.errors import HeaderMismatch, NoPatterns, ZeroAlphabet
from univshift.symbolic.subshift import subshift
from univshift.types import partial_pattern

log = logging.getLogger(__name__)


def _checked(spec: subshift) -> Iterator[partial_pattern]:
    for p in spec.forbidden:
        if p.size != spec.size or p.dimension != spec.dimension:
            raise HeaderMismatch(
                f"pattern {p} does not match header ({spec.size}, {spec.dimension})"
            )
        yield p


def spec_to_code(spec: subshift) -> nat_stream:
    """Code stream of a subshift.

    Partial patterns are replaced by their square completions. Once a
    finite forbidden set is used up the last code repeats forever.

    Args:
        spec (subshift): subshift with at least one forbidden pattern

    Returns:
        nat_stream: (s, d, codes...)

    Raises:
        NoPatterns: If the subshift forbids nothing
    """
    if not spec.forbidden.prefix(1):
        raise NoPatterns(f"{spec.name} has no forbidden patterns to code")

    source = (
        encode_pattern(c).code
        for p in _checked(spec)
        for c in square_completions(p)
    )
    codes: List[int] = []
    state = {"open": True}
    lock = threading.Lock()

    def code_at(i: int) -> int:
        with lock:
            while state["open"] and len(codes) <= i:
                try:
                    codes.append(next(source))
                except StopIteration:
                    state["open"] = False
            return codes[i] if i < len(codes) else codes[-1]

    s, d = spec.size, spec.dimension
    return nat_stream(
        lambda i: s if i == 0 else d if i == 1 else code_at(i - 2),
        "subshift_code",
        {"subshift": spec.name},
    )


def code_to_spec(
    w: nat_stream, sft_bound: Optional[int] = None, name: str = "decoded"
) -> subshift:
    """Subshift of a code stream.

    Args:
        w (nat_stream): code stream
        sft_bound (int): if given, only the first sft_bound codes are read
            and the result is an SFT
        name (str): Display name

    Returns:
        subshift: decoded subshift

    Raises:
        ZeroAlphabet: If w(0) is 0
        HeaderMismatch: If w(1) is 0
    """
    s, d = w[0], w[1]
    if s == 0:
        raise ZeroAlphabet("code announces an empty alphabet")
    if d == 0:
        raise HeaderMismatch("code announces dimension 0")
    if sft_bound is not None:
        patterns = [decode_pattern(w[i + 2], s, d) for i in range(sft_bound)]
        return subshift(s, d, patterns, sft=True, name=name)
    log.debug("decoding effective subshift %s over %d letters", name, s)
    return subshift(
        s,
        d,
        lambda: (decode_pattern(w[i + 2], s, d) for i in itertools.count()),
        name=name,
    )
