"""Exact Riemann solvers"""
