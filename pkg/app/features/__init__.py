"""Feature slices: the distance solver and the transport oracle on the line."""
