"""
graphaxial - the algebra of an edge-labeled digraph and its structure.
"""

__version__ = "0.1.0"
