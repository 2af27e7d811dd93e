"""Numerical laboratory: limit sweeps, weak-form checks, finite volumes"""
