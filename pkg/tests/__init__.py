"""
Test modules for the compact Fenwick toolkit
"""
