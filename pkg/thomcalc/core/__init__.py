"""Core algebra: rings, spaces, characteristic classes and pushforwards."""
