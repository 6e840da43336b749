"""Exact computational tools for knot concordance invariants."""
