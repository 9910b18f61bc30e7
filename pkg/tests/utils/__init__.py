"""Test utilities for the aslphono test suite."""
