"""Words, patterns, subshifts and their local languages."""
