"""abcprop package."""
