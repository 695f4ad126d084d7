"""
Test package for the CR reduction engine.
"""
