"""
abcolor - (a,b)-coloring toolkit
Exact solver, constructive O(sqrt n) colorers, extremal generators
and hardness-reduction compilers for mixed distance-1 / distance-2 colorings.
"""

__version__ = "1.0.0"
