"""Common class for all univshift components."""
import logging
from typing import Optional


class core:
    """Common class for all univshift components.

    This is the central point for caps and budgets. Class level values are
    the defaults and any of them can be overridden per instance.
    """

    # Largest number of words an exhaustive enumeration may visit
    enumeration_cap = 2 ** 24
    # Oracle queries allowed per operator run
    step_budget = 10_000
    # Largest level examined by modulus searches
    max_modulus_i = 64
    # Largest number of candidate windows a window source may build
    max_windows = 2 ** 20

    def __init__(
        self,
        enumeration_cap: Optional[int] = None,
        step_budget: Optional[int] = None,
        max_modulus_i: Optional[int] = None,
        max_windows: Optional[int] = None,
    ) -> None:
        """Initialize caps, falling back to class defaults.

        Args:
            enumeration_cap (int): Cap on exhaustive word enumeration
            step_budget (int): Oracle query budget per operator run
            max_modulus_i (int): Largest modulus level to examine
            max_windows (int): Cap on windows built by window sources
        """
        if enumeration_cap is not None:
            self.enumeration_cap = enumeration_cap
        if step_budget is not None:
            self.step_budget = step_budget
        if max_modulus_i is not None:
            self.max_modulus_i = max_modulus_i
        if max_windows is not None:
            self.max_windows = max_windows
        self.log = logging.getLogger(type(self).__module__)

    def _check_positive(self, name: str, value: int) -> None:
        """Check a cap is a positive integer.

        Args:
            name (str): Name of the cap
            value (int): Value to check

        Raises:
            Exception: If the value is not a positive integer
        """
        if not isinstance(value, int) or value < 1:
            raise Exception(f"{name} must be a positive integer, got {value}")

    def caps(self) -> "core":
        """Get a plain caps object carrying this component's values.

        Returns:
            core: caps snapshot
        """
        for name in ["enumeration_cap", "step_budget", "max_modulus_i", "max_windows"]:
            self._check_positive(name, getattr(self, name))
        return core(
            self.enumeration_cap,
            self.step_budget,
            self.max_modulus_i,
            self.max_windows,
        )
