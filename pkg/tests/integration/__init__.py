"""
Integration tests for the compact Fenwick toolkit
"""
