"""Lifts of circle homeomorphisms, their evaluation and rotation numbers."""
