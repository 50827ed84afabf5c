"""
Convergence scans, identity suites and coefficient tables
"""
