"""torbar: exact chain-level algebra for bar constructions, homotopy
Gerstenhaber operations on simplicial cochains, classifying spaces, torus
formality, and Tor rings of homogeneous spaces."""

__version__ = "0.1.0"
