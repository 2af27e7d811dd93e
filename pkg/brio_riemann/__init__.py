"""
brio-riemann
Exact Riemann solvers for the perturbed Brio system and its flux-approximation limits
"""
__version__ = "1.0.0"
