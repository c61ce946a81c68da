"""Exact desk-scale computations for subshift languages, sliding block
codes, spacetime complexity, and word metrics in finitely generated groups.
"""

__version__ = "0.1.0"
