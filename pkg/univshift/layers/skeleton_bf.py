# flake8: noqa
import itertools
from functools import lru_cache

import numpy as np

from univshift.layers.skeleton import C0, C1, LB, RB, VALID, skeleton, verdict


class skeleton_bf(skeleton):
    """Brute force methods for the skeleton

    These are meant for debug and as test oracles, to compare against the
    recursive parser
    """

    def factor_words(self, length, depth=2):
        """factor_words: Every word of a length occurring in a generated
        depth N period, over all bit choices of layers 1..N. Cells left to
        deeper layers take one role per period, with free coding values.
        """
        return self._factor_words(length, depth)

    @lru_cache(maxsize=None)
    def _factor_words(self, length, depth):
        lay = self.layout(depth)
        m = lay.length
        found = set()
        for start in range(m):
            absolute = start + np.arange(length)
            pos = absolute % m
            period = absolute // m
            deep = sorted(set(period[lay.layer[pos] == 0].tolist()))
            for fills in itertools.product([LB, RB, C0], repeat=len(deep)):
                fill = dict(zip(deep, fills))
                options = []
                for p, per in zip(pos.tolist(), period.tolist()):
                    r = int(lay.role[p]) if lay.layer[p] else fill[per]
                    options.append((r,) if r in (LB, RB) else (C0, C1))
                found.update(itertools.product(*options))
        return frozenset(found)

    def check(self, w, depth):
        """check: factor membership instead of parsing; verdicts carry no
        position
        """
        if tuple(int(a) for a in w) in self.factor_words(len(w), depth):
            return VALID
        return verdict(False, 0, -1, "not-a-factor")
