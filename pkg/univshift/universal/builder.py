"""Universal one dimensional subshifts built on the layered skeleton."""
import itertools
import logging
from typing import Callable, Dict, Iterator, List, Optional, Set

from univshift.codecs.nat import nat_stream
from univshift.codecs.subshift_code import spec_to_code
from univshift.common import core
from univshift.layers.decode import L_n, layer_decoder
from univshift.layers.skeleton import SIGMA, skeleton
from univshift.layers.transform import transform_forbidden
from univshift.layers.windows import decoded_language, layered_windows
from univshift.operators.machine import oracle_machine
from univshift.operators.registry import operator_registry
from univshift.symbolic.subshift import pattern_stream, subshift
from univshift.symbolic.windows import local_windows, window_source
from univshift.symbolic.words import periodic_point
from univshift.types import partial_pattern, word
from univshift.universal.assignment import (
    Targets,
    assign_layers,
    assignment,
    fixed_assignment,
)

log = logging.getLogger(__name__)


def dovetail(
    first: pattern_stream,
    layer_stream: Callable[[int], Optional[pattern_stream]],
    max_layer: Optional[int] = None,
    name: str = "dovetail",
) -> pattern_stream:
    """Fair merge of a base stream with one stream per layer.

    Round r takes the next pattern of the base stream and of the streams
    of layers 1..r, skipping streams that are used up.

    Args:
        first (pattern_stream): base stream
        layer_stream (Callable): layer to its stream, None if it has none
        max_layer (int): last layer with a stream, None for unbounded
        name (str): stream name

    Returns:
        pattern_stream: merged stream
    """

    def source() -> Iterator[partial_pattern]:
        taken: Dict[object, int] = {}
        for r in itertools.count(1):
            streams: List[object] = ["base"]
            top = r if max_layer is None else min(r, max_layer)
            streams += [n for n in range(1, top + 1) if layer_stream(n) is not None]
            progressed = False
            for key in streams:
                stream = first if key == "base" else layer_stream(key)
                i = taken.get(key, 0)
                if len(stream.prefix(i + 1)) > i:
                    taken[key] = i + 1
                    progressed = True
                    yield stream[i]
            if not progressed and max_layer is not None and r >= max_layer:
                return

    return pattern_stream(source, name)


class universal_bundle(core):
    """Universal spec with its layer assignment and decoder registry."""

    def __init__(
        self,
        params: skeleton,
        layers: assignment,
        max_layer: Optional[int] = None,
        name: str = "universal",
        **caps: int,
    ) -> None:
        """Bundle over an assignment.

        Args:
            params (skeleton): skeleton parameters
            layers (assignment): layer to target
            max_layer (int): last layer carrying constraints, None for all
            name (str): spec name
            caps (int): caps forwarded to core
        """
        super().__init__(**caps)
        self.params = params
        self.assignment = layers
        self.max_layer = max_layer
        self._streams: Dict[int, Optional[pattern_stream]] = {}
        self._canonical: Dict[int, word] = {}
        self.spec = subshift(
            SIGMA,
            1,
            dovetail(params.forbidden_stream(), self.layer_stream, max_layer, name),
            name=name,
        )
        self.registry = operator_registry(
            factory=lambda n: L_n(params, n), indices=self.registered_layers
        )

    def registered_layers(self) -> Iterator[int]:
        """Assigned layers, the registry index set.

        Returns:
            Iterator[int]: layers in increasing order
        """
        for n in self.assignment.layers():
            if self.max_layer is not None and n > self.max_layer:
                return
            yield n

    def layer_stream(self, n: int) -> Optional[pattern_stream]:
        """Transported forbidden patterns of the target of layer n.

        Args:
            n (int): layer

        Returns:
            pattern_stream: stream, None for an unassigned layer
        """
        if n not in self._streams:
            target = self.assignment.spec_of(n)
            self._streams[n] = (
                None if target is None else transform_forbidden(self.params, n, target)
            )
        return self._streams[n]

    def canonical(self, n: int, depth: int = 64) -> word:
        """Periodic letter sequence standing for layer n in window tables.

        Args:
            n (int): layer
            depth (int): number of target patterns it must avoid

        Returns:
            word: one period, the zero letter for unassigned layers
        """
        if n not in self._canonical:
            target = self.assignment.spec_of(n)
            found = None if target is None else periodic_point(target, depth)
            if target is not None and found is None:
                log.warning("layer %d: no short periodic point of %s", n, target.name)
            self._canonical[n] = found or word([0], 2 ** n)
        return self._canonical[n]

    def windows(self, n: int) -> layered_windows:
        """Window source enumerating layer n with the other layers canonical.

        Args:
            n (int): free layer

        Returns:
            layered_windows: window source over the universal spec
        """
        canonical = {j: self.canonical(j) for j in range(1, n + 2) if j != n}
        return layered_windows(self.params, self.spec, [n], canonical, caps=self.caps())

    def operator_windows(self, m: oracle_machine) -> window_source:
        """Window source an operator is checked on.

        Layered windows hold every layer but one at canonical letters, so
        only a decoder of that layer on this skeleton may use them. Other
        operators get the exhaustive windows of the spec.

        Args:
            m (oracle_machine): operator

        Returns:
            window_source: layered windows of its layer, or local windows
        """
        if isinstance(m, layer_decoder) and m.skeleton.k == self.params.k:
            return self.windows(m.layer)
        log.debug("%s: exhaustive windows", m.name)
        return local_windows(self.spec, self.enumeration_cap)

    def decoded_language(self, n: int, length: int, depth: int = 64) -> Set[word]:
        """Locally admissible language read by L_n.

        Args:
            n (int): layer
            length (int): word length
            depth (int): number t of forbidden patterns of the universal spec

        Returns:
            Set[word]: decoded words
        """
        canonical = {j: self.canonical(j) for j in range(1, n + 2) if j != n}
        return decoded_language(
            self.params, self.spec, n, length, depth, canonical, caps=self.caps()
        )

    def code(self) -> nat_stream:
        """Godel code of the universal spec.

        Returns:
            nat_stream: code stream
        """
        return spec_to_code(self.spec)

    def to_json(self, max_layer: int = 8, prefix: int = 0) -> Dict:
        """Assignment, registry and a forbidden pattern prefix.

        Args:
            max_layer (int): layers described
            prefix (int): number of forbidden patterns included

        Returns:
            Dict: JSON ready description
        """
        top = max_layer if self.max_layer is None else min(max_layer, self.max_layer)
        table = self.assignment.table(top)
        return {
            "k": self.params.k,
            "assignment": {str(n): i for n, i in table.items()},
            "registry": [
                {"index": n, "operator": f"L{n}"}
                for n, i in table.items()
                if i is not None
            ],
            "forbidden": [p.to_record() for p in self.spec.first(prefix)],
        }


def build_layered(
    params: skeleton, targets: Dict[int, subshift], name: str = "layered", **caps: int
) -> universal_bundle:
    """Skeleton constrained at an explicit set of layers.

    Args:
        params (skeleton): skeleton parameters
        targets (Dict[int, subshift]): layer to target
        name (str): spec name
        caps (int): caps forwarded to the bundle

    Returns:
        universal_bundle: bundle whose registry holds the given layers
    """
    top = max(list(targets) + [0])
    return universal_bundle(params, fixed_assignment(targets), top, name, **caps)


def build_universal_1d(
    targets: Targets,
    params: skeleton,
    max_layer: Optional[int] = None,
    name: str = "universal",
    **caps: int,
) -> universal_bundle:
    """Universal subshift of a family of one dimensional subshifts.

    Args:
        targets (Sequence, Callable): targets, or an indexed stream of them
        params (skeleton): skeleton parameters
        max_layer (int): last constrained layer, None for every layer
        name (str): spec name
        caps (int): caps forwarded to the bundle

    Returns:
        universal_bundle: bundle
    """
    layers = assign_layers(targets)
    bundle = universal_bundle(params, layers, max_layer, name, **caps)
    log.info("universal spec %s built with k=%d", name, params.k)
    return bundle


def bundle_code(bundle: universal_bundle) -> nat_stream:
    """Code stream of a bundle's universal spec.

    Args:
        bundle (universal_bundle): bundle

    Returns:
        nat_stream: Godel code
    """
    return bundle.code()
