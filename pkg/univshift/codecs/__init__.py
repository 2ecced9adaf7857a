"""Natural number streams, pattern codes and subshift codes."""
