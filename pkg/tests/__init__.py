"""
Test package for the laundry library.

Unit tests for each library module and integration tests for the CLI.
"""
