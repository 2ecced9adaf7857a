"""Uniform continuity modulus of an operator on a subshift."""
import logging
from dataclasses import dataclass
from typing import Optional

from univshift.codecs.nat import z_coords
from univshift.common import core
from univshift.errors import CapExceeded, OutOfDomainQuery
from univshift.operators.machine import oracle_machine, run_operator
from univshift.symbolic.subshift import subshift
from univshift.symbolic.windows import local_windows, window_oracle, window_source

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class modulus_result:
    """Radius found by a modulus search and how it was found."""

    ell: int
    vacuous: bool
    words_tested: int
    max_cell: int
    levels: int

    def to_json(self) -> dict:
        """JSON form.

        Returns:
            dict: fields
        """
        return {
            "ell": self.ell,
            "vacuous": self.vacuous,
            "words_tested": self.words_tested,
            "max_cell": self.max_cell,
            "levels": self.levels,
        }


def footprint_reach(m: oracle_machine, r: int, dimension: int) -> int:
    """Largest cell radius queried by an oblivious machine on inputs 0..r.

    Args:
        m (oracle_machine): oblivious machine
        r (int): last input
        dimension (int): dimension of the input configurations

    Returns:
        int: max |coordinate| over queried cells, 0 if none
    """
    reach = 0
    for n in range(r + 1):
        for idx in m.footprint(n):
            if idx >= 2:
                coord = z_coords(idx - 2, dimension)
                reach = max(reach, max(abs(c) for c in coord))
    return reach


def modulus_of_continuity(
    m: oracle_machine,
    r: int,
    spec: subshift,
    caps: Optional[core] = None,
    windows: Optional[window_source] = None,
) -> modulus_result:
    """First level i at which outputs 0..r only read cells in [-i;i]^d.

    Level i quantifies over windows of radius i avoiding the first i
    forbidden patterns. A level without such windows holds vacuously.
    Oblivious machines are settled from their query footprint; other
    machines are run on every window of each level.

    Args:
        m (oracle_machine): operator
        r (int): last input whose output must be determined
        spec (subshift): domain subshift
        caps (core): caps; uses enumeration_cap, step_budget, max_modulus_i
        windows (window_source): window supplier, default exhaustive

    Returns:
        modulus_result: ell and search statistics

    Raises:
        CapExceeded: If no level up to max_modulus_i qualifies
    """
    caps = caps or core()
    windows = windows or local_windows(spec, caps.enumeration_cap)
    max_i = caps.max_modulus_i

    if m.oblivious:
        reach = footprint_reach(m, r, spec.dimension)
        if reach > max_i:
            raise CapExceeded(f"{m.name} reads radius {reach} beyond cap {max_i}")
        for i in range(reach + 1):
            if not windows.exists(i, i):
                log.info("%s: level %d has no admissible window", m.name, i)
                return modulus_result(i, True, 0, reach, i + 1)
            if i == reach:
                log.info("%s: modulus %d from footprint", m.name, i)
                return modulus_result(i, False, i + 1, reach, i + 1)

    tested = 0
    max_cell = 0
    for i in range(max_i + 1):
        table = windows.windows(i, i)
        if len(table) == 0:
            log.info("%s: level %d has no admissible window", m.name, i)
            return modulus_result(i, True, tested, max_cell, i + 1)
        sides = windows.sides(i)
        level_ok = True
        for row in table:
            oracle = window_oracle(row, sides, spec.size)
            tested += 1
            try:
                for n in range(r + 1):
                    run_operator(m, oracle, n, caps.step_budget)
            except OutOfDomainQuery:
                level_ok = False
            finally:
                max_cell = max(max_cell, oracle.max_cell)
            if not level_ok:
                break
        if level_ok:
            log.info("%s: modulus %d after %d windows", m.name, i, tested)
            return modulus_result(i, False, tested, max_cell, i + 1)
    raise CapExceeded(f"{m.name} not determined on windows up to radius {max_i}")
