"""Core configuration, errors and output"""
