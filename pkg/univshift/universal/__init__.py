"""Universal subshifts built on the layered skeleton."""
