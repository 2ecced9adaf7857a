"""Oracle machines, operator registries and moduli of continuity."""
supported_operators = ["identity", "header", "diverge", "xor", "relabel", "subsample"]
