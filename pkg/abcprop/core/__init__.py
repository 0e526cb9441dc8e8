"""Core abcprop modules."""
