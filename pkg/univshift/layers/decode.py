"""Layer decoders phi_n and the operators L_n built on them."""
import logging
import re
from functools import lru_cache
from typing import Any, Dict, Sequence

import numpy as np

from univshift.errors import NoCompleteCell, OutOfDomainQuery
from univshift.layers.skeleton import C0, SIGMA, skeleton
from univshift.operators.builtin import block_subsample
from univshift.operators.machine import oracle_machine
from univshift.operators.registry import builtin_operator
from univshift.symbolic.block_code import block_code

log = logging.getLogger(__name__)


def phi_n(params: skeleton, n: int, window: Sequence[int]) -> int:
    """Letter coded by the leftmost complete layer n meta coding cell.

    The first n real coding cells of the cell are read as bits, most
    significant first.

    Args:
        params (skeleton): skeleton parameters
        n (int): layer
        window (Sequence[int]): skeleton window, usually of length m_n + 1

    Returns:
        int: letter in 0..2^n-1

    Raises:
        NoCompleteCell: If the window shows no complete layer n meta coding cell
    """
    value = 0
    for p in params.phi_positions(window, n):
        bit = int(window[p]) - C0
        assert bit in (0, 1), "meta coding cells hold coding letters"
        value = (value << 1) | bit
    return value


def phi_code(params: skeleton, n: int) -> block_code:
    """phi_n as a block code of radius rho_n.

    Windows without a complete meta coding cell map to 0 so the code is
    total.

    Args:
        params (skeleton): skeleton parameters
        n (int): layer

    Returns:
        block_code: code from the skeleton alphabet to 2^n letters
    """

    @lru_cache(maxsize=1 << 16)
    def rule(window: Sequence[int]) -> int:
        try:
            return phi_n(params, n, window)
        except NoCompleteCell:
            return 0

    return block_code(SIGMA, 2 ** n, params.geometry(n).rho, rule, f"phi{n}")


class layer_decoder(block_subsample):
    """L_n: phi_n followed by subsampling at stride m_n."""

    def __init__(self, params: skeleton, n: int) -> None:
        """Decoder of layer n.

        Args:
            params (skeleton): skeleton parameters
            n (int): layer, at least 1
        """
        assert n >= 1, "layers start at 1"
        self.skeleton = params
        self.layer = n
        self.geometry = params.geometry(n)
        super().__init__(phi_code(params, n), (self.geometry.m,), f"L{n}")

    @property
    def params(self) -> Dict[str, Any]:
        """Skeleton k and layer."""
        return {"k": self.skeleton.k, "layer": self.layer}

    def decode_rows(
        self, rows: np.ndarray, roles: Sequence[int], centers: Sequence[int]
    ) -> np.ndarray:
        """Outputs at several centers for a batch of windows sharing one structure.

        Rows differ only in coding values, so the decoder positions are
        located once on ``roles`` and read from every row.

        Args:
            rows (np.ndarray): windows x cells table
            roles (Sequence[int]): letters of any row, used for structure
            centers (Sequence[int]): window indices of the output cells

        Returns:
            np.ndarray: windows x centers table of letters

        Raises:
            OutOfDomainQuery: If a decoder window leaves the table
        """
        rho = self.geometry.rho
        out = np.zeros((len(rows), len(centers)), dtype=np.int64)
        for q, c in enumerate(centers):
            lo, hi = c - rho, c + rho + 1
            if lo < 0 or hi > rows.shape[1]:
                raise OutOfDomainQuery(f"L{self.layer} at {c} reads outside the window")
            try:
                positions = self.skeleton.phi_positions(roles[lo:hi], self.layer)
            except NoCompleteCell:
                continue
            for p in positions:
                out[:, q] = (out[:, q] << 1) | (rows[:, lo + p] - C0)
        return out


def L_n(params: skeleton, n: int) -> layer_decoder:
    """Finite index sofic projective subdynamics operator of layer n.

    Args:
        params (skeleton): skeleton parameters
        n (int): layer

    Returns:
        layer_decoder: operator on skeleton configuration streams
    """
    return layer_decoder(params, n)


_LAYER_NAME = re.compile(r"^L(\d+)$")


def resolve_operator(name: str, params: skeleton) -> oracle_machine:
    """Operator from a registry name, layer decoders included.

    Args:
        name (str): ``L<n>`` or a built-in operator name
        params (skeleton): skeleton used by layer decoders

    Returns:
        oracle_machine: operator
    """
    found = _LAYER_NAME.match(name)
    if found:
        return L_n(params, int(found.group(1)))
    return builtin_operator(name)
