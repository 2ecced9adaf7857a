"""Enumeration of the subshifts a subshift simulates through a registry."""
import itertools
import logging
from dataclasses import dataclass
from typing import (
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import numpy as np

from univshift.codecs.nat import z_index
from univshift.common import core
from univshift.errors import (
    BudgetExceeded,
    BudgetExhausted,
    CapExceeded,
    NotSFT,
    OutOfDomainQuery,
)
from univshift.operators.modulus import modulus_of_continuity
from univshift.operators.registry import operator_registry
from univshift.symbolic.subshift import subshift
from univshift.symbolic.windows import local_windows, window_source
from univshift.symbolic.words import avoid_mask
from univshift.types import square_coords

log = logging.getLogger(__name__)

Family = Union[Sequence[subshift], Callable[[int], Optional[subshift]]]


@dataclass(frozen=True)
class claim_record:
    """Certified simulation: operator n maps X into target i at precision b."""

    i: int
    n: int
    b: int
    j: int
    status: str = "claimed"

    def to_json(self) -> Dict[str, Union[int, str]]:
        """JSON form.

        Returns:
            Dict: record fields
        """
        return {
            "i": self.i,
            "n": self.n,
            "b": self.b,
            "j": self.j,
            "status": self.status,
        }


def pattern_bound(spec: subshift) -> int:
    """Side length bound b of an SFT, at least 1.

    Args:
        spec (subshift): SFT

    Returns:
        int: max side length over its forbidden patterns

    Raises:
        NotSFT: If the forbidden set is not known to be finite
    """
    if spec.sft_bound is None:
        raise NotSFT(f"{spec.name} has no finite forbidden set")
    return max([1] + [max(p.shape()) for p in spec.all_patterns()])


def build_B(G: Sequence[subshift]) -> Iterator[Tuple[int, int]]:
    """Precision bounds (i, b_i) of a family of SFTs, in family order.

    Args:
        G (Sequence[subshift]): SFTs, indexed from 1

    Yields:
        Tuple: (i, b_i)
    """
    for i, spec in enumerate(G, start=1):
        yield i, pattern_bound(spec)


def r_b(b: int, dimension: int) -> int:
    """Last operator input covering the output window [-b;b]^d.

    Args:
        b (int): precision
        dimension (int): d

    Returns:
        int: 2 + max z_index over [-b;b]^d
    """
    return 2 + max(z_index(v) for v in square_coords(b, dimension))


class certifier(core):
    """Dovetailed search for clean images of X under registry operators.

    Tuples (i, n, b, j) are visited by increasing i+n+b+j, then
    lexicographically. A tuple needs j above the modulus of operator n for
    the inputs covering [-b;b]^d; it passes when every admissible window of
    radius j maps to a window of the right dimension over the target
    alphabet avoiding the target's first b patterns. The first passing j
    claims (i, n, b).
    """

    def __init__(
        self,
        X: subshift,
        registry: operator_registry,
        G: Family,
        B: Optional[Dict[int, int]] = None,
        windows: Optional[Callable[[int], window_source]] = None,
        **caps: int,
    ) -> None:
        """Certifier over a subshift and a registry.

        Args:
            X (subshift): simulating subshift
            registry (operator_registry): operators
            G (Sequence, Callable): targets indexed from 1
            B (Dict[int, int]): precision per target, default build_B
            windows (Callable): operator index to window source, default
                exhaustive windows of X
            caps (int): caps forwarded to core
        """
        super().__init__(**caps)
        self.X = X
        self.registry = registry
        if callable(G):
            self._target: Callable[[int], Optional[subshift]] = G
        else:
            items = list(G)
            self._target = lambda i: (
                items[i - 1] if 1 <= i <= len(items) else None
            )
        self._B = dict(B or {})
        if windows is None:
            shared = local_windows(X, self.enumeration_cap)
            windows = lambda n: shared  # noqa: E731
        self._windows = windows
        self._sources: Dict[int, window_source] = {}
        self._moduli: Dict[Tuple[int, int], Optional[int]] = {}
        self._images: Dict[Tuple[int, int, int], Optional[np.ndarray]] = {}
        self._budget: Dict[Tuple[int, int, int, int], int] = {}
        self.records: List[claim_record] = []
        self.examined = 0

    @classmethod
    def from_bundle(
        cls,
        bundle: Any,
        G: Family,
        B: Optional[Dict[int, int]] = None,
        registry: Optional[operator_registry] = None,
        **caps: int,
    ) -> "certifier":
        """Certifier of a universal bundle.

        Layer decoders of the bundle's skeleton are checked on layered
        windows, every other operator on the exhaustive windows of the spec.

        Args:
            bundle (universal_bundle): spec, registry and layer windows
            G (Sequence, Callable): targets indexed from 1
            B (Dict[int, int]): precision per target
            registry (operator_registry): operators, default the bundle's
                decoder registry
            caps (int): caps, default those of the bundle

        Returns:
            certifier: certifier over the bundle's spec
        """
        own = bundle.caps()
        for name in ["enumeration_cap", "step_budget", "max_modulus_i", "max_windows"]:
            caps.setdefault(name, getattr(own, name))
        if registry is None:
            registry = bundle.registry

        def windows(n: int) -> window_source:
            return bundle.operator_windows(registry[n])

        return cls(bundle.spec, registry, G, B, windows, **caps)

    def target(self, i: int) -> Optional[subshift]:
        """Target of an index, None past the end.

        Args:
            i (int): index from 1

        Returns:
            subshift: target
        """
        return self._target(i)

    def precision(self, i: int) -> int:
        """b_i of a target.

        Args:
            i (int): target index

        Returns:
            int: b_i
        """
        if i not in self._B:
            spec = self.target(i)
            assert spec is not None, f"no target {i}"
            self._B[i] = pattern_bound(spec)
        return self._B[i]

    def windows(self, n: int) -> window_source:
        """Window source used for operator n.

        Args:
            n (int): operator index

        Returns:
            window_source: source
        """
        if n not in self._sources:
            self._sources[n] = self._windows(n)
        return self._sources[n]

    def modulus(self, n: int, b: int) -> Optional[int]:
        """Modulus of operator n for precision b, None past the caps.

        Args:
            n (int): operator index
            b (int): precision

        Returns:
            int: ell
        """
        key = (n, b)
        if key not in self._moduli:
            try:
                found = modulus_of_continuity(
                    self.registry[n],
                    r_b(b, self.X.dimension),
                    self.X,
                    self.caps(),
                    self.windows(n),
                )
                self._moduli[key] = found.ell
            except (CapExceeded, BudgetExceeded, BudgetExhausted) as err:
                log.warning("operator %d precision %d: %s", n, b, err)
                self._moduli[key] = None
        return self._moduli[key]

    def images(
        self, n: int, b: int, j: int, step_budget: int
    ) -> Optional[np.ndarray]:
        """Outputs 0..r_b of operator n on every admissible window of radius j.

        Args:
            n (int): operator index
            b (int): precision
            j (int): window radius and depth
            step_budget (int): queries per run

        Returns:
            np.ndarray: windows x inputs table, None if a run leaves its window

        Raises:
            BudgetExhausted: If a run exceeds step_budget
        """
        key = (n, b, j)
        if key not in self._images:
            inputs = list(range(r_b(b, self.X.dimension) + 1))
            try:
                table = self.windows(n).images(
                    self.registry[n], j, j, inputs, step_budget
                )
            except (OutOfDomainQuery, BudgetExceeded) as err:
                log.debug("operator %d radius %d: %s", n, j, err)
                table = None
            self._images[key] = table
        return self._images[key]

    def clean(self, i: int, n: int, b: int, j: int, step_budget: int) -> bool:
        """Inner check of one tuple.

        Args:
            i (int): target index
            n (int): operator index
            b (int): precision
            j (int): window radius
            step_budget (int): queries per run

        Returns:
            bool: True if every image window is clean for target i. An empty
            table passes only when the source is exhaustive.
        """
        spec = self.target(i)
        assert spec is not None, f"no target {i}"
        table = self.images(n, b, j, step_budget)
        if table is None:
            return False
        if len(table) == 0:
            if not self.windows(n).exhaustive:
                log.debug("operator %d radius %d: partial source is empty", n, j)
                return False
            return True
        d = spec.dimension
        if np.any(table[:, 1] != d):
            return False
        box = list(square_coords(b, d))
        cols = [2 + z_index(v) for v in box]
        out = table[:, cols]
        if np.any(out >= spec.size) or np.any(out < 0):
            return False
        return bool(np.all(avoid_mask(out, (2 * b + 1,) * d, spec.first(b))))

    def _tuples(self, total: int) -> Iterator[Tuple[int, int, int, int]]:
        for i in range(1, total + 1):
            if self.target(i) is None:
                break
            b = self.precision(i)
            for n in self.registry.indices():
                j = total - i - n - b
                if j < 0:
                    break
                yield i, n, b, j

    def run(self, max_tuples: int) -> Iterator[claim_record]:
        """Examine up to ``max_tuples`` tuples, yielding each new target.

        Each (i, n, b) is claimed at its first passing j and kept in
        ``records``; the iterator yields a target index once. Tuples whose
        runs exhaust the step budget are retried in the next round with
        twice the budget.

        Args:
            max_tuples (int): number of tuples examined

        Yields:
            claim_record: first claim of each target
        """
        claimed: Set[int] = set()
        done: Set[Tuple[int, int, int]] = set()
        parked: List[Tuple[int, int, int, int]] = []
        for total in itertools.count(0):
            if self.target(1) is None:
                return
            retry, parked = parked, []
            for t in retry + list(self._tuples(total)):
                if self.examined >= max_tuples:
                    return
                self.examined += 1
                i, n, b, j = t
                if (i, n, b) in done:
                    continue
                ell = self.modulus(n, b)
                if ell is None or j <= ell:
                    continue
                budget = self._budget.get(t, self.step_budget)
                try:
                    ok = self.clean(i, n, b, j, budget)
                except BudgetExhausted:
                    self._budget[t] = 2 * budget
                    parked.append(t)
                    log.debug("tuple %s parked with budget %d", t, 2 * budget)
                    continue
                if not ok:
                    continue
                record = claim_record(i, n, b, j)
                self.records.append(record)
                done.add((i, n, b))
                log.info("claim %s", record.to_json())
                if i not in claimed:
                    claimed.add(i)
                    yield record


def enumerate_simulated(
    X: subshift,
    registry: operator_registry,
    G: Family,
    B: Optional[Dict[int, int]] = None,
    max_tuples: int = 1000,
    windows: Optional[Callable[[int], window_source]] = None,
    **caps: int,
) -> List[claim_record]:
    """Claims found within a tuple budget.

    Args:
        X (subshift): simulating subshift
        registry (operator_registry): operators
        G (Sequence, Callable): targets indexed from 1
        B (Dict[int, int]): precision per target, default build_B
        max_tuples (int): number of tuples examined
        windows (Callable): operator index to window source
        caps (int): caps forwarded to the certifier

    Returns:
        List[claim_record]: first claim per target, in emission order
    """
    return list(certifier(X, registry, G, B, windows, **caps).run(max_tuples))


def verify_claim(
    claim: claim_record,
    X: subshift,
    registry: operator_registry,
    G: Family,
    windows: Optional[Callable[[int], window_source]] = None,
    **caps: int,
) -> bool:
    """Re-run the inner check of a claim from scratch.

    Args:
        claim (claim_record): claim
        X (subshift): simulating subshift
        registry (operator_registry): operators
        G (Sequence, Callable): targets indexed from 1
        windows (Callable): operator index to window source
        caps (int): caps forwarded to the certifier

    Returns:
        bool: True iff j is above the modulus and the check passes
    """
    fresh = certifier(X, registry, G, {claim.i: claim.b}, windows, **caps)
    if fresh.target(claim.i) is None or claim.n not in registry:
        return False
    ell = fresh.modulus(claim.n, claim.b)
    if ell is None or claim.j <= ell:
        return False
    return fresh.clean(claim.i, claim.n, claim.b, claim.j, fresh.step_budget)
